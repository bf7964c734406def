"""Estimator base classes: parameter introspection and cloning."""

from __future__ import annotations

import inspect


class BaseEstimator:
    """get_params / set_params over the ``__init__`` signature, sklearn style."""

    @classmethod
    def _param_names(cls) -> list[str]:
        sig = inspect.signature(cls.__init__)
        return [
            name
            for name, p in sig.parameters.items()
            if name != "self" and p.kind is not inspect.Parameter.VAR_KEYWORD
        ]

    def get_params(self) -> dict:
        return {name: getattr(self, name) for name in self._param_names()}

    def set_params(self, **params):
        valid = set(self._param_names())
        for key, value in params.items():
            if key not in valid:
                raise ValueError(
                    f"unknown parameter {key!r} for {type(self).__name__}; "
                    f"valid parameters: {sorted(valid)}"
                )
            setattr(self, key, value)
        return self

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v!r}" for k, v in self.get_params().items())
        return f"{type(self).__name__}({args})"


def clone(estimator):
    """Fresh unfitted copy with the same constructor parameters."""
    return type(estimator)(**estimator.get_params())


class ClassifierMixin:
    def score(self, x, y) -> float:
        from .metrics import accuracy_score

        return accuracy_score(y, self.predict(x))

    def fit_predict(self, x, y):
        return self.fit(x, y).predict(x)
