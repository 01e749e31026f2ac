"""Bundled example games and preference profiles.

``fig1``          two-player game, x at l, player 2 choosing y/z at r.
``fig1_variant``  same tree, player 2 ranks x < y < z.
``fig4_left``     same tree, player 2 has the cyclic relation x<y, y<z, z<y.
``fig4_right``    one-player game where an {I,A}-terminal profile is not Nash.
``fig5_left``     game carrying the secondary pattern; no strong equilibrium.
``fig5_right``    out-of-pattern three-player game without strong equilibrium.
``table2``        four layerable preference orders over u..z (no tree).
``terminating_not_layerable``      three players, three outcomes, no layering.
``out_of_pattern_not_layerable``   out of pattern but no layering.
``leaf``          single terminal node.
"""

from __future__ import annotations

import json
from importlib import resources
from typing import Any

from .game import Game, load_game
from .prefs import PreferenceRelation, load_preferences

GAMES = ("fig1", "fig1_variant", "fig4_left", "fig4_right", "fig5_left", "fig5_right", "leaf")
PROFILES = ("table2", "terminating_not_layerable", "out_of_pattern_not_layerable")


def fixture_path(name: str):
    return resources.files("seqdyn").joinpath("data", f"{name}.json")


def fixture_document(name: str) -> dict[str, Any]:
    return json.loads(fixture_path(name).read_text(encoding="utf-8"))


def load_fixture(name: str) -> Game:
    return load_game(fixture_document(name))


def load_fixture_prefs(name: str) -> dict[str, PreferenceRelation]:
    """Preference profile of any fixture (games included)."""
    doc = fixture_document(name)
    if "tree" in doc:
        g = load_game(doc)
        return dict(g.prefs)
    return load_preferences(doc)
