"""Few-shot vision-language anomaly localization and fine-grained
classification on precomputed encoder embeddings."""

__version__ = "0.1.0"
