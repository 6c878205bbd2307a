"""Loader for the versioned tolerance file."""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

DEFAULT_NAME = "tolerances.ini"


@dataclass(frozen=True)
class Tolerances:
    source: str
    values: dict[tuple[str, str], float]

    def get(self, section: str, key: str) -> float:
        try:
            return self.values[section, key]
        except KeyError:
            raise KeyError(f"tolerance [{section}] {key} missing from {self.source}") from None


def load_tolerances(path: str | os.PathLike | None = None) -> Tolerances:
    parser = configparser.ConfigParser(inline_comment_prefixes=(";",))
    if path is None:
        ref = resources.files("unimodal_ranks") / "data" / DEFAULT_NAME
        parser.read_string(ref.read_text(), source=DEFAULT_NAME)
        source = f"<package>/{DEFAULT_NAME}"
    else:
        text = Path(path).read_text()
        parser.read_string(text, source=str(path))
        source = str(path)
    values = {}
    for section in parser.sections():
        if section == "meta":
            continue
        for key, raw in parser[section].items():
            values[section, key] = float(raw)
    return Tolerances(source, values)
