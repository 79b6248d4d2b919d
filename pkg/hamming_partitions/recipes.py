# hamming_partitions/recipes.py
"""
Construction expressions: seed partitions (trivial, the length-7 uniform
partition, imports) and construction B applied to pairs of them.

Textual form: T<n> (trivial, n = 2^m-1), P7, I:<name>, B(<left>,<right>).
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple, Union

from .codes import hamming_code
from .config_schema import ToolkitConfig
from .mollard import construction_b
from .partitions import (
    CodePartition,
    UniformityReport,
    phelps_search,
    require_partition,
    trivial_partition,
    uniformity,
)

logger = logging.getLogger(__name__)


def length_of_m(m: int) -> int:
    return (1 << m) - 1


def m_of_length(n: int) -> int:
    m = (n + 1).bit_length() - 1
    if m < 2 or (1 << m) != n + 1:
        raise ValueError(f"length {n} is not 2^m-1 with m >= 2")
    return m


@dataclass(frozen=True)
class Trivial:
    m: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"trivial partitions need m >= 2, got {self.m}")

    def __str__(self) -> str:
        return f"T{length_of_m(self.m)}"


@dataclass(frozen=True)
class Phelps:
    """The uniform partition of F^7 with pairwise code intersections of size 4."""

    def __str__(self) -> str:
        return "P7"


_NAME_RESERVED = re.compile(r"[(), ]")


def check_import_name(name: str) -> str:
    if not name or _NAME_RESERVED.search(name):
        raise ValueError(f"bad import name {name!r}")
    return name


def import_label(text: str) -> str:
    """An import name derived from free text, with recipe punctuation and spaces mapped to '_'."""
    return check_import_name(_NAME_RESERVED.sub("_", text))


@dataclass(frozen=True)
class Imported:
    name: str

    def __post_init__(self):
        check_import_name(self.name)

    def __str__(self) -> str:
        return f"I:{self.name}"


@dataclass(frozen=True)
class Compose:
    left: "Recipe"
    right: "Recipe"

    def __str__(self) -> str:
        return f"B({self.left},{self.right})"


Recipe = Union[Trivial, Phelps, Imported, Compose]


@dataclass(frozen=True)
class ImportedPartition:
    """A certified external partition: its uniformity number was computed, not claimed."""
    name: str
    partition: CodePartition
    uniformity_number: int

    def __post_init__(self):
        check_import_name(self.name)

    @property
    def length(self) -> int:
        return self.partition.length


class RecipeMismatchError(RuntimeError):
    """A law-guaranteed construction certified to a value other than the predicted one."""

    def __init__(self, recipe: Recipe, predicted: int, computed: Optional[int]):
        self.recipe = recipe
        self.predicted = predicted
        self.computed = computed
        shown = "non-uniform" if computed is None else str(computed)
        super().__init__(f"{recipe}: predicted uniformity {predicted}, certified {shown}")


# ------------------------- Parsing ------------------------- #

def parse_recipe(text: str) -> Recipe:
    src = text.replace(" ", "")
    recipe, pos = _parse_at(src, 0)
    if pos != len(src):
        raise ValueError(f"unexpected {src[pos:]!r} at offset {pos} in recipe {text!r}")
    return recipe


def _parse_at(src: str, pos: int) -> Tuple[Recipe, int]:
    if src.startswith("B(", pos):
        left, pos = _parse_at(src, pos + 2)
        if not src.startswith(",", pos):
            raise ValueError(f"expected ',' at offset {pos} in recipe {src!r}")
        right, pos = _parse_at(src, pos + 1)
        if not src.startswith(")", pos):
            raise ValueError(f"expected ')' at offset {pos} in recipe {src!r}")
        return Compose(left, right), pos + 1
    end = pos
    while end < len(src) and src[end] not in ",()":
        end += 1
    token = src[pos:end]
    if token == "P7":
        return Phelps(), end
    if token.startswith("I:"):
        return Imported(token[2:]), end
    if token.startswith("T") and token[1:].isdigit():
        return Trivial(m_of_length(int(token[1:]))), end
    raise ValueError(f"unknown recipe term {token!r} at offset {pos}")


# ------------------------- Arithmetic ------------------------- #

def recipe_length(recipe: Recipe, imports: Dict[str, ImportedPartition]) -> int:
    if isinstance(recipe, Trivial):
        return length_of_m(recipe.m)
    if isinstance(recipe, Phelps):
        return 7
    if isinstance(recipe, Imported):
        return _lookup(recipe, imports).length
    l = recipe_length(recipe.left, imports)
    t = recipe_length(recipe.right, imports)
    return l * t + l + t


def is_trivial(recipe: Recipe) -> bool:
    """Whether the recipe yields a partition whose components share one code."""
    return all(isinstance(node, (Trivial, Compose)) for node in walk(recipe))


def law_guarded(recipe: Recipe) -> bool:
    """Every composition in the tree has an operand that is a trivial partition."""
    return all(is_trivial(node.left) or is_trivial(node.right)
               for node in walk(recipe) if isinstance(node, Compose))


def composition_terms(recipe: Compose, imports: Dict[str, ImportedPartition]) -> Tuple[int, int, int]:
    """(left uniformity, right uniformity, l*t) for one composition step."""
    l = recipe_length(recipe.left, imports)
    t = recipe_length(recipe.right, imports)
    return (predicted_uniformity(recipe.left, imports),
            predicted_uniformity(recipe.right, imports),
            l * t)


def predicted_uniformity(recipe: Recipe, imports: Optional[Dict[str, ImportedPartition]] = None) -> int:
    imports = imports or {}
    if isinstance(recipe, Trivial):
        return length_of_m(recipe.m) - recipe.m
    if isinstance(recipe, Phelps):
        return 2
    if isinstance(recipe, Imported):
        return _lookup(recipe, imports).uniformity_number
    return sum(composition_terms(recipe, imports))


def _lookup(recipe: Imported, imports: Dict[str, ImportedPartition]) -> ImportedPartition:
    if recipe.name not in imports:
        raise ValueError(f"recipe refers to import {recipe.name!r}, which was not supplied")
    return imports[recipe.name]


def walk(recipe: Recipe) -> Iterator[Recipe]:
    """Post-order traversal."""
    if isinstance(recipe, Compose):
        yield from walk(recipe.left)
        yield from walk(recipe.right)
    yield recipe


# ------------------------- Building ------------------------- #

@dataclass
class BuildContext:
    """Caches built partitions and their automorphism generators by recipe text for one driver run."""
    config: ToolkitConfig = field(default_factory=ToolkitConfig)
    imports: Dict[str, ImportedPartition] = field(default_factory=dict)
    built: Dict[str, CodePartition] = field(default_factory=dict)
    automorphisms: Dict[str, list] = field(default_factory=dict)

    def add_import(self, imported: ImportedPartition) -> None:
        if imported.name in self.imports:
            raise ValueError(f"import {imported.name!r} supplied twice")
        self.imports[imported.name] = imported


def _phelps_seed() -> CodePartition:
    found = phelps_search(2, limit=1)
    if not found:
        raise RuntimeError("no uniform partition of length 7 with intersection dimension 2")
    return found[0]


def build(recipe: Recipe, ctx: BuildContext) -> CodePartition:
    key = str(recipe)
    cached = ctx.built.get(key)
    if cached is not None:
        return cached
    if isinstance(recipe, Trivial):
        out = trivial_partition(hamming_code(recipe.m))
    elif isinstance(recipe, Phelps):
        out = _phelps_seed()
    elif isinstance(recipe, Imported):
        out = _lookup(recipe, ctx.imports).partition
    else:
        left = build(recipe.left, ctx)
        right = build(recipe.right, ctx)
        # inputs were certified when they were built
        out = construction_b(left, right, verify=False)
        require_partition(out, ctx.config.verification)
    ctx.built[key] = out
    logger.debug("Built %s at n=%d", key, out.length)
    return out


@dataclass(frozen=True)
class BuildOutcome:
    recipe: Recipe
    partition: CodePartition
    report: UniformityReport
    predicted: int
    guarded: bool

    @property
    def computed(self) -> Optional[int]:
        return self.report.uniformity_number


def build_and_certify(recipe: Recipe, ctx: BuildContext) -> BuildOutcome:
    """
    Build, verify and measure. A law-guarded recipe must certify uniform at
    exactly its predicted value; other recipes report whatever they measure.
    """
    predicted = predicted_uniformity(recipe, ctx.imports)
    partition = build(recipe, ctx)
    report = uniformity(partition, ctx.config.verification)
    guarded = law_guarded(recipe)
    if guarded and report.uniformity_number != predicted:
        logger.error("%s certified %s, predicted %d", recipe, report.describe(), predicted)
        raise RecipeMismatchError(recipe, predicted, report.uniformity_number)
    return BuildOutcome(recipe, partition, report, predicted, guarded)


# ------------------------- Planning ------------------------- #

def split_orders(m: int, general: bool = True) -> List[int]:
    """
    Exponents a of the left length 2^a-1 to try, right exponent m-a >= 2.
    Even m starts from the length-7 left factor, odd m from the length-3 one.
    """
    first = (3, 2) if m % 2 == 0 else (2, 3)
    preferred = [a for a in first if m - a >= 2]
    if not general:
        return preferred
    return preferred + [a for a in range(2, m - 1) if a not in preferred]


def reachable(m: int, imports: Dict[str, ImportedPartition], general: bool = True,
              _memo: Optional[Dict[int, Dict[int, List[Recipe]]]] = None) -> Dict[int, List[Recipe]]:
    """
    Predicted uniformity -> recipes of length 2^m-1, in preference order:
    seeds first, then law-guarded compositions, then the rest.
    """
    memo = {} if _memo is None else _memo
    if m in memo:
        return memo[m]
    out: Dict[int, List[Recipe]] = {}

    def add(recipe: Recipe) -> None:
        out.setdefault(predicted_uniformity(recipe, imports), []).append(recipe)

    add(Trivial(m))
    if m == 3:
        add(Phelps())
    for name in sorted(imports):
        if imports[name].length == length_of_m(m):
            add(Imported(name))
    guarded: List[Recipe] = []
    unguarded: List[Recipe] = []
    for a in split_orders(m, general):
        lefts = reachable(a, imports, general, memo)
        rights = reachable(m - a, imports, general, memo)
        for lv in sorted(lefts):
            for rv in sorted(rights):
                left, right = lefts[lv][0], rights[rv][0]
                recipe = Compose(left, right)
                if is_trivial(recipe):
                    continue
                (guarded if law_guarded(recipe) else unguarded).append(recipe)
    for recipe in guarded + unguarded:
        add(recipe)
    memo[m] = out
    return out
