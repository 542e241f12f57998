"""Infrastructure layer - config, logging, and dependency injection."""
