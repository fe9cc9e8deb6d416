"""
storage package

Persistence of trained models.

Modules:
    - bundle: ModelBundle, save_model and load_model.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from .bundle import ModelBundle, bundle_from_model, load_model, model_from_bundle, save_model

__all__ = ["ModelBundle", "bundle_from_model", "load_model", "model_from_bundle", "save_model"]
