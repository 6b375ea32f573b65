"""
Golden classification lists for the worked examples.

Orbits are written as element-name tuples, as the worked examples name them
(("1", "2") is f_{1,2}; ("i",) is f_i), and resolved to canonical labels
against the constructed group.
Each family optionally names the subgroup H with family = f_{G-H}.
"""

from dataclasses import dataclass
from typing import FrozenSet, Optional, Tuple

from models.group import GroupTable
from models.orbit import OrbitLabel, mask_of
from orbits.engine import orbit_label

OrbitName = Tuple[str, ...]


@dataclass(frozen=True)
class GoldenFamily:
    orbits: Tuple[OrbitName, ...]
    subgroup: Optional[str] = None

    @property
    def display(self) -> str:
        return " ∪ ".join("f_{" + ",".join(name) + "}" for name in self.orbits)


@dataclass(frozen=True)
class GoldenRule:
    premises: Tuple[OrbitName, ...]
    conclusions: Tuple[OrbitName, ...]


@dataclass(frozen=True)
class GoldenExample:
    check_id: str
    group_spec: str
    dim: int
    families: Tuple[GoldenFamily, ...]
    rules: Tuple[GoldenRule, ...] = ()


def resolve_orbit(g: GroupTable, name: OrbitName) -> OrbitLabel:
    """Canonical label of f_{a,...} given by element names"""
    members = (g.identity,) + tuple(g.index_of(n) for n in name)
    return orbit_label(g, mask_of(members), len(name) + 1)


def resolve_family(g: GroupTable, family: GoldenFamily) -> FrozenSet[OrbitLabel]:
    return frozenset(resolve_orbit(g, name) for name in family.orbits)


def resolve_rule(g: GroupTable, rule: GoldenRule) -> Tuple[Tuple[OrbitLabel, ...], Tuple[OrbitLabel, ...]]:
    """(premises, conclusions) as sorted label tuples, matching ImplicationRule.key()"""
    premises = tuple(sorted({resolve_orbit(g, n) for n in rule.premises}))
    conclusions = tuple(sorted({resolve_orbit(g, n) for n in rule.conclusions}))
    return premises, conclusions


def _family(*orbits: str, subgroup: Optional[str] = None) -> GoldenFamily:
    return GoldenFamily(tuple(tuple(o.split(",")) for o in orbits), subgroup)


Z6 = GoldenExample(
    check_id="ex-Z6",
    group_spec="Z:6",
    dim=3,
    families=(
        _family("1,2", "2,4", subgroup="⟨3⟩"),
        _family("1,2", "1,3", "1,4"),
        _family("1,2", "1,3", "1,4", "2,4", subgroup="{0}"),
    ),
    rules=(GoldenRule((("1", "2"),), (("1", "4"), ("2", "4"))),),
)

Z7 = GoldenExample(
    check_id="ex-Z7",
    group_spec="Z:7",
    dim=3,
    families=(
        _family("1,2", "1,3", "1,4", "2,4"),
        _family("1,2", "1,4", "1,5", "2,4"),
        _family("1,2", "1,3", "1,4", "1,5", "2,4", subgroup="{0}"),
    ),
    rules=(GoldenRule((("1", "2"), ("2", "4")), (("1", "3"), ("1", "5"))),),
)

S3 = GoldenExample(
    check_id="ex-S3",
    group_spec="D:3",
    dim=3,
    families=(
        _family("ρ,ρ^2", "ρ,σ", subgroup="⟨σρ^2⟩"),
        _family("ρ,ρ^2", "ρ,σρ", subgroup="⟨σ⟩"),
        _family("ρ,ρ^2", "ρ,σρ^2", subgroup="⟨σρ⟩"),
        _family("ρ,σ", "ρ,σρ", "ρ,σρ^2"),
        _family("ρ,ρ^2", "ρ,σ", "ρ,σρ", "ρ,σρ^2", subgroup="{e}"),
    ),
)

Q8 = GoldenExample(
    check_id="ex-Q8",
    group_spec="Q8",
    dim=2,
    families=(
        _family("i", "j", subgroup="⟨k⟩"),
        _family("i", "k", subgroup="⟨j⟩"),
        _family("j", "k", subgroup="⟨i⟩"),
        _family("i", "j", "k", subgroup="⟨-1⟩"),
        _family("-1", "i", "j", "k", subgroup="{1}"),
    ),
    rules=(
        GoldenRule((("-1",),), (("i",),)),
        GoldenRule((("i",),), (("j",), ("k",))),
    ),
)

D4 = GoldenExample(
    check_id="ex-D4",
    group_spec="D:4",
    dim=2,
    families=(
        _family("σ", "σρ", "σρ^2", "σρ^3", subgroup="⟨ρ⟩"),
        _family("ρ", "σ", "σρ", "σρ^2", "σρ^3", subgroup="⟨ρ^2⟩"),
        _family("ρ", "σρ", "σρ^3", subgroup="⟨ρ^2,σ⟩"),
        _family("ρ", "σ", "σρ^2", subgroup="⟨ρ^2,σρ⟩"),
        _family("ρ", "ρ^2", "σ", "σρ", "σρ^2", "σρ^3", subgroup="{e}"),
        _family("ρ", "ρ^2", "σρ", "σρ^2", "σρ^3", subgroup="⟨σ⟩"),
        _family("ρ", "ρ^2", "σ", "σρ^2", "σρ^3", subgroup="⟨σρ⟩"),
        _family("ρ", "ρ^2", "σ", "σρ", "σρ^3", subgroup="⟨σρ^2⟩"),
        _family("ρ", "ρ^2", "σ", "σρ", "σρ^2", subgroup="⟨σρ^3⟩"),
    ),
)

EXAMPLES = {example.check_id: example for example in (Z6, Z7, S3, Q8, D4)}
