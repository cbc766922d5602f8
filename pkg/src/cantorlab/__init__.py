"""Regular subsets of Cantor space as deterministic parity automata."""
from .automata import ParityAutomaton, UPWord, membership
from .constructions import CantorSet, SetExpr, elaborate
from .expr import parse_expr



def clear_caches() -> None:
    """Drop every memoized result so timings start from scratch."""
    import importlib

    for name in ("automata", "axioms", "constructions", "topology", "wadge", "synthesis"):
        mod = importlib.import_module(f"{__name__}.{name}")
        for obj in vars(mod).values():
            if callable(getattr(obj, "cache_clear", None)):
                obj.cache_clear()


__all__ = ["clear_caches", "CantorSet", "ParityAutomaton", "SetExpr", "UPWord", "elaborate", "membership",
           "parse_expr"]
