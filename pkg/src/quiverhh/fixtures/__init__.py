"""Small presentations used by the tests, the demos and the CLI.

``load("core_C")`` parses ``core_C.qv`` from this package.
"""

from importlib import resources

from ..dsl import parse_presentation


def names() -> list:
    return sorted(p.name[:-3] for p in resources.files(__name__).iterdir() if p.name.endswith(".qv"))


def text(name: str) -> str:
    return resources.files(__name__).joinpath(f"{name}.qv").read_text()


def load(name: str, field=None):
    return parse_presentation(text(name), field)
