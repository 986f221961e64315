"""Rainbow triangles in arc-colored digraphs: constructions, classification and exhaustive checks."""
