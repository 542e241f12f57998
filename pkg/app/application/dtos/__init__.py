"""Application DTOs (Data Transfer Objects)."""
