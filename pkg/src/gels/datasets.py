"""Bundled example datasets.

Three classic positive-valued lifetime/strength samples ship with the
package; each file carries a provenance header and the loader checks the
advertised count before handing the data out.
"""

from importlib import resources

import numpy as np

from .estimation import Dataset

_REGISTRY = {
    "ball_bearings": ("ball_bearings.csv", 23,
                      "Lieblein & Zelen (1956) ball bearing fatigue, millions of revolutions"),
    "leukaemia": ("leukaemia.csv", 33,
                  "Feigl & Zelen (1965) leukaemia survival times, weeks"),
    "strength_10mm": ("strength_10mm.csv", 63,
                      "Badar & Priest (1982) carbon fibre strength at 10 mm, GPa"),
}


def available():
    """Names of the bundled datasets."""
    return sorted(_REGISTRY)


def data_path(name):
    """Filesystem path of a bundled dataset file."""
    if name not in _REGISTRY:
        raise KeyError(f"unknown dataset {name!r}; available: {available()}")
    return resources.files("gels.data") / _REGISTRY[name][0]


def load(name):
    """Load a bundled dataset as a validated Dataset."""
    fname, expected_n, source = _REGISTRY[name]
    path = data_path(name)
    values = []
    for line in path.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        values.append(float(line))
    if len(values) != expected_n:
        raise RuntimeError(
            f"dataset {name} is corrupt: expected {expected_n} values, "
            f"found {len(values)}")
    return Dataset(values=np.array(values), name=name, source=source)
