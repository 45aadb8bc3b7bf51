"""Producers of DesignModel: the MiniOO front end and the JSON facts format."""

from pathlib import Path

from .builder import PRIMITIVE_TYPES, build_model
from .facts import dumps_facts, from_facts, load_facts, loads_facts, save_facts, to_facts
from .lexer import Token, tokenize
from .parser import parse_program, parse_sources


def model_from_source(text: str, path: str = "<input>"):
    return build_model(parse_sources([(path, text)]))


def load_sources(paths):
    """Parse and build a model from MiniOO files on disk."""
    sources = [(str(p), Path(p).read_text(encoding="utf-8")) for p in paths]
    return build_model(parse_sources(sources))


__all__ = [
    "PRIMITIVE_TYPES", "Token", "build_model", "dumps_facts", "from_facts",
    "load_facts", "load_sources", "loads_facts", "model_from_source",
    "parse_program", "parse_sources", "save_facts", "to_facts", "tokenize",
]
