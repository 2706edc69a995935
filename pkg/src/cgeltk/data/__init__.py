"""Bundled mini-corpus with UD and PTB parallels for a subset of sentences."""

from importlib import resources
from pathlib import Path


def path(name: str) -> Path:
    return Path(str(resources.files(__name__).joinpath(name)))


MINI_CGEL = "mini.cgel"
MINI_CONLLU = "mini.conllu"
MINI_PTB = "mini.ptb"
MINI_HEADS = "mini.heads.tsv"
MINI_CENSUS = "mini.census.tsv"
