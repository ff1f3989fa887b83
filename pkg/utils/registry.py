""" Name registries for Lax variants and verification suites
"""

import fnmatch
import re
import sys
from collections import defaultdict

__all__ = [
    "register_lax",
    "register_suite",
    "list_entries",
    "is_entry",
    "entrypoint",
    "list_modules",
]

_kind_to_entrypoints = defaultdict(dict)  # mapping of kind -> {name: entrypoint fn}
_kind_to_module = defaultdict(dict)  # mapping of kind -> {name: module name}
_module_to_names = defaultdict(set)  # dict of sets to check membership of a name in a module


def _register(kind, fn):
    # lookup containing module
    mod = sys.modules[fn.__module__]
    module_name_split = fn.__module__.split(".")
    module_name = module_name_split[-1] if len(module_name_split) else ""

    # add entry to __all__ in module
    name = fn.__name__
    if hasattr(mod, "__all__"):
        if name not in mod.__all__:
            mod.__all__.append(name)
    else:
        mod.__all__ = [name]

    assert name not in _kind_to_entrypoints[kind], f"{kind} {name!r} registered twice"
    _kind_to_entrypoints[kind][name] = fn
    _kind_to_module[kind][name] = module_name
    _module_to_names[module_name].add(name)
    return fn


def register_lax(fn):
    return _register("lax", fn)


def register_suite(fn):
    return _register("suite", fn)


def _natural_key(string_):
    return [int(s) if s.isdigit() else s for s in re.split(r"(\d+)", string_.lower())]


def list_entries(kind, filter="", exclude_filters=""):
    """Return registered names of one kind, sorted naturally

    Args:
        kind (str) - "lax" or "suite"
        filter (str or list[str]) - Wildcard filter string that works with fnmatch
        exclude_filters (str or list[str]) - Wildcard filters to exclude names after including them with filter

    Example:
        list_entries("lax", "*_3d") -- returns the variants that only exist in dimension 3
    """
    all_names = _kind_to_entrypoints[kind].keys()
    if filter:
        names = set()
        include_filters = filter if isinstance(filter, (tuple, list)) else [filter]
        for f in include_filters:
            names = names.union(fnmatch.filter(all_names, f))
    else:
        names = all_names
    if exclude_filters:
        if not isinstance(exclude_filters, (tuple, list)):
            exclude_filters = [exclude_filters]
        for xf in exclude_filters:
            names = set(names).difference(fnmatch.filter(names, xf))
    return list(sorted(names, key=_natural_key))


def is_entry(kind, name):
    """Check if a name is registered"""
    return name in _kind_to_entrypoints[kind]


def entrypoint(kind, name):
    """Fetch the entrypoint registered under a name"""
    return _kind_to_entrypoints[kind][name]


def list_modules():
    """Return list of module names that register entries"""
    return list(sorted(_module_to_names.keys()))
