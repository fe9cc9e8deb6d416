"""
commands module

Defines the command-line surface of the toolkit.

Submodules:
- train_command: Trains a model and optionally saves a bundle.
- eval_command: Evaluates a saved bundle.
- gradcheck_command: Finite-difference gradient verification.
- ablate_command: Ablation suite over the matching variants.
- synth_command: Writes the synthetic task to disk.
- common: Shared argument groups and dataset loading.

Features:
- Each command registers itself on the argparse sub-parsers and sets its handler.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from .ablate_command import register_ablate_command
from .eval_command import register_eval_command
from .gradcheck_command import register_gradcheck_command
from .synth_command import register_synth_command
from .train_command import register_train_command

__all__ = [
    "register_ablate_command",
    "register_eval_command",
    "register_gradcheck_command",
    "register_synth_command",
    "register_train_command",
]
