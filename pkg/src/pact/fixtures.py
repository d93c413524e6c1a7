"""Bundled instances used by the test suite and the CLI.

The dictionaries below are the authoritative JSON documents; ``fixtures
--emit`` writes them verbatim and the suite re-validates the round trip.
Identity domains and maps are omitted (the parser defaults them).
"""
from __future__ import annotations

import copy
import json

from .instance import Instance, parse_instance

_Z2 = {"elements": ["0", "1"],
       "table": [["0", "1"], ["1", "0"]],
       "identity": "0"}

_Z4 = {"elements": ["0", "1", "2", "3"],
       "table": [["0", "1", "2", "3"],
                 ["1", "2", "3", "0"],
                 ["2", "3", "0", "1"],
                 ["3", "0", "1", "2"]],
       "identity": "0"}

# The 8-point circle: open arcs a0..a3, closed corners c0..c3, with
# U_{c_i} = {a_{i-1}, c_i, a_i}.
_C8_SPACE = {
    "points": ["a0", "a1", "a2", "a3", "c0", "c1", "c2", "c3"],
    "min_open": {
        "a0": ["a0"], "a1": ["a1"], "a2": ["a2"], "a3": ["a3"],
        "c0": ["a0", "a3", "c0"],
        "c1": ["a0", "a1", "c1"],
        "c2": ["a1", "a2", "c2"],
        "c3": ["a2", "a3", "c3"],
    },
}

_C8_ALL = ["a0", "a1", "a2", "a3", "c0", "c1", "c2", "c3"]

_ROT1 = {"a0": "a1", "a1": "a2", "a2": "a3", "a3": "a0",
         "c0": "c1", "c1": "c2", "c2": "c3", "c3": "c0"}
_ROT2 = {"a0": "a2", "a1": "a3", "a2": "a0", "a3": "a1",
         "c0": "c2", "c1": "c3", "c2": "c0", "c3": "c1"}
_ROT3 = {"a0": "a3", "a1": "a0", "a2": "a1", "a3": "a2",
         "c0": "c3", "c1": "c0", "c2": "c1", "c3": "c2"}

FIXTURES: dict[str, dict] = {
    "pt": {
        "id": "pt",
        "group": _Z2,
        "space": {"points": ["x"], "min_open": {"x": ["x"]}},
        "partial_action": {"domains": {"1": ["x"]},
                           "maps": {"1": {"x": "x"}}},
    },
    "z2-pair": {
        "id": "z2-pair",
        "group": _Z2,
        "space": {"points": ["a", "b"], "min_open": {"a": ["a"], "b": ["b"]}},
        "partial_action": {"domains": {"1": ["a"]},
                           "maps": {"1": {"a": "a"}}},
    },
    "z2-swap": {
        "id": "z2-swap",
        "group": _Z2,
        "space": {"points": ["u", "v"], "min_open": {"u": ["u"], "v": ["v"]}},
        "partial_action": {"domains": {"1": ["u", "v"]},
                           "maps": {"1": {"u": "v", "v": "u"}}},
    },
    "z2-wedge": {
        "id": "z2-wedge",
        "group": _Z2,
        "space": {"points": ["w", "a", "b"],
                  "min_open": {"w": ["w"], "a": ["w", "a"], "b": ["w", "b"]}},
        "partial_action": {"domains": {"1": ["w", "a", "b"]},
                           "maps": {"1": {"w": "w", "a": "b", "b": "a"}}},
        "maps": {"const-w": {"w": "w", "a": "w", "b": "w"}},
    },
    "z2-pair-sq": {
        "id": "z2-pair-sq",
        "group": _Z2,
        "space": {"points": ["(a,a)", "(a,b)", "(b,a)", "(b,b)"],
                  "min_open": {"(a,a)": ["(a,a)"], "(a,b)": ["(a,b)"],
                               "(b,a)": ["(b,a)"], "(b,b)": ["(b,b)"]}},
        "partial_action": {"domains": {"1": ["(a,a)"]},
                           "maps": {"1": {"(a,a)": "(a,a)"}}},
    },
    "z4-circle": {
        "id": "z4-circle",
        "group": _Z4,
        "space": _C8_SPACE,
        "partial_action": {
            "domains": {"1": _C8_ALL, "2": _C8_ALL, "3": _C8_ALL},
            "maps": {"1": _ROT1, "2": _ROT2, "3": _ROT3},
        },
        "subgroups": {"H": ["0", "2"]},
    },
    "z4-half": {
        "id": "z4-half",
        "group": _Z4,
        "space": {
            "points": ["a0", "a1", "a3", "c0", "c1"],
            "min_open": {"a0": ["a0"], "a1": ["a1"], "a3": ["a3"],
                         "c0": ["a0", "a3", "c0"], "c1": ["a0", "a1", "c1"]},
        },
        "partial_action": {
            "domains": {"1": ["a0", "a1", "c1"],
                        "2": ["a1", "a3"],
                        "3": ["a0", "a3", "c0"]},
            "maps": {"1": {"a0": "a1", "a3": "a0", "c0": "c1"},
                     "2": {"a1": "a3", "a3": "a1"},
                     "3": {"a0": "a3", "a1": "a0", "c1": "c0"}},
        },
    },
    "z4-arcs": {
        "id": "z4-arcs",
        "group": _Z4,
        "space": _C8_SPACE,
        "partial_action": {
            "domains": {"1": ["a0"], "2": ["a1", "a3"], "3": ["a2"]},
            "maps": {"1": {"a2": "a0"},
                     "2": {"a1": "a1", "a3": "a3"},
                     "3": {"a0": "a2"}},
        },
        "subgroups": {"H": ["0", "2"]},
    },
    "z4-from-z2-pair": {
        "id": "z4-from-z2-pair",
        "group": _Z2,
        "space": {"points": ["a", "b"], "min_open": {"a": ["a"], "b": ["b"]}},
        "partial_action": {"domains": {"1": ["a"]},
                           "maps": {"1": {"a": "a"}}},
        "big_group": _Z4,
        "k_embedding": {"0": "0", "1": "2"},
    },
}


def fixture_names() -> list[str]:
    return list(FIXTURES)


def fixture_dict(name: str) -> dict:
    if name not in FIXTURES:
        raise KeyError(f"no bundled fixture named {name!r}")
    return copy.deepcopy(FIXTURES[name])


def fixture_text(name: str) -> str:
    return json.dumps(fixture_dict(name), indent=2) + "\n"


def load_fixture(name: str) -> Instance:
    return parse_instance(fixture_dict(name))
