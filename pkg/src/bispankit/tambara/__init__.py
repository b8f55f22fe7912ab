"""Mackey and Tambara functors: Burnside elements, models, words, law checks."""

from .burnside import (
    BurnsideElement,
    apply_bispan,
    classify,
    classify_over,
    level_basis,
    mark,
    realize,
    realize_over,
)
from .models import BurnsideModel, FiniteModel, MonoidValuedMackey, TableModel, TambaraModel, colorings
from .verify import BurnsideMonoids, LatticeMonoid, VerifyReport, Violation, grouplike_check, verify_model
from .words import Op, Word, decompose_bispan_to_generators, eval_bispan, run_word

__all__ = [
    "BurnsideElement", "apply_bispan", "classify", "classify_over", "level_basis", "mark", "realize",
    "realize_over", "BurnsideModel", "FiniteModel", "MonoidValuedMackey", "TableModel", "TambaraModel",
    "colorings", "BurnsideMonoids", "LatticeMonoid", "VerifyReport", "Violation", "grouplike_check",
    "verify_model", "Op", "Word", "decompose_bispan_to_generators", "eval_bispan", "run_word",
]
