"""Hypothesis strategies for description ASTs and model-level value types."""
from fractions import Fraction

from hypothesis import strategies as st

from desiree.syntax import ast

IDENTS = ("A", "B", "C", "D", "Student", "User", "Data_set", "x1")
SLOTS = ("s", "t", "actor", "object", "when")
INDIVIDUALS = ("a", "b", "the_system", "Mon")
UNIT_NAMES = (None, "Sec", "MB")

idents = st.sampled_from(IDENTS)
slot_names = st.sampled_from(SLOTS)


def fractions(min_value=0, max_value=60):
    return st.builds(
        Fraction,
        st.integers(min_value=min_value, max_value=max_value),
        st.integers(min_value=1, max_value=4),
    )


@st.composite
def intervals(draw):
    lo = draw(fractions())
    if draw(st.booleans()):
        hi = None
    else:
        hi = lo + draw(fractions(min_value=0, max_value=30))
    return ast.Interval(lo, hi, draw(st.sampled_from(UNIT_NAMES)))


@st.composite
def percents(draw):
    lo = draw(fractions(max_value=1))
    lo = min(lo, Fraction(1))
    hi = min(lo + draw(fractions(max_value=1)), Fraction(1))
    return ast.Percent(lo, hi)


value_sets = st.lists(
    st.sampled_from(("Mon", "Wed", "Fri", "3", "5")),
    min_size=1, max_size=3, unique=True,
).map(lambda vs: ast.ValueSet(tuple(vs)))

named_regions = st.sampled_from(("Fast", "Good", "Nearly Fast")).map(ast.Named)

regions = st.one_of(named_regions, intervals(), value_sets, percents())

modifiers = st.one_of(
    st.just(ast.ExactlyOne()),
    st.integers(min_value=0, max_value=3).map(ast.AtMost),
    st.integers(min_value=1, max_value=3).map(ast.AtLeast),
    st.integers(min_value=1, max_value=3).map(ast.Exactly),
    st.just(ast.Some()),
    st.just(ast.Only()),
)

enums = st.lists(st.sampled_from(INDIVIDUALS), min_size=1, max_size=3,
                 unique=True).map(lambda ms: ast.Enum(tuple(ms)))

atoms = idents.map(ast.Atom)


def descriptions(max_depth: int = 3):
    """Concept-position descriptions (regions only appear as slot fillers).

    In description position braces always read as enumerations, so value-set
    regions only occur behind region-context slots (has_value_in); the
    strategies respect that split.
    """

    def extend(children):
        plain_region_fillers = st.one_of(
            named_regions, intervals(), percents()).map(ast.Region)
        fillers = st.one_of(children, plain_region_fillers)
        return st.one_of(
            st.builds(ast.Slot, slot_names, modifiers, fillers),
            st.builds(ast.Slot, st.just("has_value_in"),
                      st.just(ast.ExactlyOne()), regions.map(ast.Region)),
            st.builds(ast.And, children, children),
            st.builds(ast.Or, children, children),
            st.builds(ast.Diff, children, children),
            st.builds(ast.Proj, st.one_of(atoms, enums), slot_names),
        )

    return st.recursive(st.one_of(atoms, enums), extend, max_leaves=8)
