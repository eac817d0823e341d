"""Service layer: FastAPI app plus the shared analysis handlers."""
