from .run import Engine, EngineError, run

__all__ = ["Engine", "EngineError", "run"]
