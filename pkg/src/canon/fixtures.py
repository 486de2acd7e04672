"""Access to the fixture files shipped with the package."""
from __future__ import annotations

from importlib import resources
from typing import List, Tuple

from .abstract import AbstractSystem, load_abstract_system
from .equational import parse_presentation
from .terms import Formula, Signature


def fixture_path(name: str) -> str:
    return str(resources.files("canon") / "data" / name)


def fixture_names() -> List[str]:
    return sorted(p.name for p in (resources.files("canon") / "data").iterdir()
                  if p.name.endswith((".sys", ".eqs", ".json")))


def abstract_fixture(name: str) -> AbstractSystem:
    if not name.endswith(".sys"):
        name += ".sys"
    return load_abstract_system((resources.files("canon") / "data" / name).read_text("utf-8"))


def equational_fixture(name: str) -> Tuple[Signature, List[Formula]]:
    if not name.endswith(".eqs"):
        name += ".eqs"
    return parse_presentation((resources.files("canon") / "data" / name).read_text("utf-8"))
