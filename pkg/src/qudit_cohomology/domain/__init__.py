"""Domain layer: value types, pure algebra, exceptions and service interfaces."""
