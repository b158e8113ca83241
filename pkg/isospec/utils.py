import copy
import collections.abc
import math
import numbers

import click
import numpy as np


def sechowrap(text, wrap_opts={}, **style):
    text = click.wrap_text(text, **wrap_opts)
    click.secho(text, **style)


def set_path_in_dict(dct, path, value, inplace=False):
    """
    Set value at *path* in *dct* to *value*.

    *path* is an iterable of keys, ``("coherent", "tail_tol")`` targets the
    key "tail_tol" of the sub dict at key "coherent".

    *dct* is deep copied first unless *inplace* is true.

    >>> set_path_in_dict({'a': {'b': 1}}, ('a', 'c'), 2)
    {'a': {'b': 1, 'c': 2}}
    """
    if inplace:
        cur = ret = dct
    else:
        cur = ret = copy.deepcopy(dct)
    keys = list(path)
    while keys:
        key = keys.pop(0)
        if keys:
            cur = cur.setdefault(key, {})
        else:
            cur[key] = value
    return ret


def deep_merge(dct_a, dct_b, inplace=False):
    """
    Merge *dct_b* into *dct_a*, key path by key path.

    Return the merged result, in a new dict if *inplace* is false, or else in
    *dct_a*.
    """
    if inplace:
        ret = dct_a
    else:
        ret = copy.deepcopy(dct_a)
    for path, value in flatten_dict(dct_b).items():
        set_path_in_dict(ret, path, value, inplace=True)
    return ret


def flatten_dict(dct):
    """
    Flatten keys of (possibly nested) *dct*.

    >>> flatten_dict({'a': {'b': 'c'}})
    {('a', 'b'): 'c'}
    """
    return dict(_flatten_dict(dct, ()))


def _flatten_dict(dct, ancestors=()):
    items = []
    for key, value in dct.items():
        path = ancestors + (key,)
        if isinstance(value, collections.abc.Mapping):
            items.extend(_flatten_dict(value, path))
        else:
            items.append((path, value))
    return items


def to_builtin(value):
    """
    Convert numpy scalars and arrays nested in *value* to plain Python
    objects, so that they can be serialized.

    Complex numbers become ``[re, im]`` pairs and non-finite floats become
    None.

    >>> to_builtin({'a': np.float64(0.5), 'b': (np.int64(1), 2j)})
    {'a': 0.5, 'b': [1, [0.0, 2.0]]}
    """
    if isinstance(value, collections.abc.Mapping):
        return {str(k): to_builtin(v) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        return to_builtin(value.tolist())
    if isinstance(value, (list, tuple)):
        return [to_builtin(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, numbers.Integral):
        return int(value)
    if isinstance(value, numbers.Real):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, numbers.Complex):
        return [to_builtin(value.real), to_builtin(value.imag)]
    return value
