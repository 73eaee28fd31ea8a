"""Exact Kazhdan-Lusztig bases, cells and asymptotic rings of Hecke algebras with unequal parameters.

Words in all returned data are lists of 1-based generator indices.
"""

from ._core import Instance, InputError, __version__, format_version


def instance(type=None, rank=None, m=None, weights=None, *, matrix=None, gamma_rank=None, order=None,
             universal=False, seed=None, cache_dir=None, use_cache=True):
    config = {}
    for key, value in (("type", type), ("rank", rank), ("m", m), ("coxeter_matrix", matrix),
                       ("gamma_rank", gamma_rank), ("order", order), ("weights", weights), ("seed", seed)):
        if value is not None:
            config[key] = value
    if universal:
        config["universal"] = True
    return Instance(config, cache_dir=cache_dir, use_cache=use_cache)


__all__ = ["Instance", "InputError", "instance", "__version__", "format_version"]
