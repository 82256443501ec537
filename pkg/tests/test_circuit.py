import pytest
from hypothesis import given, settings, strategies as st

from quditenc.circuit import (
    Circuit,
    Gate,
    busiest_wire,
    compare,
    count_gates,
    depth,
    export_structured,
    export_text,
    fuse_single_qudit,
    gate_words,
    parse_structured,
    percent_reduction,
)
from quditenc.gatesets import preset

DEFS = preset("d3-proposed-4").gates


def single(q, name="L", row=1):
    return Gate("single", (q,), name, row)


def test_depth_small_examples():
    assert depth(Circuit(3, 2)) == 0
    assert depth(Circuit(3, 2, [single(1), single(2)], gate_defs=DEFS)) == 1
    assert depth(Circuit(3, 2, [single(1), single(1)], gate_defs=DEFS)) == 2
    gates = [single(1), Gate("add", (1, 2), row=1, stage="A"), Gate("single", (2,), "R", 2)]
    assert depth(Circuit(3, 2, gates, gate_defs=DEFS)) == 3


def test_worked_example_metrics(encoders513):
    base = count_gates(encoders513["d3-sec3-4"].circuit)
    prop = count_gates(encoders513["d3-proposed-4"].circuit)
    assert (base.single_qudit_count, prop.single_qudit_count) == (19, 16)
    assert (base.single_qudit_count_total, prop.single_qudit_count_total) == (23, 20)
    assert base.two_qudit_count == prop.two_qudit_count == 13
    assert prop.depth < base.depth


def test_compare(encoders513):
    cmp = compare(encoders513["d3-sec3-4"].circuit, encoders513["d3-proposed-4"].circuit)
    assert cmp.gate_reduction == 16
    same = compare(encoders513["d3-sec3-4"].circuit, encoders513["d3-sec3-4"].circuit)
    assert (same.gate_reduction, same.depth_reduction) == (0, 0)


@pytest.mark.parametrize("b,p,pct", [(19, 16, 16), (51, 40, 22), (39, 33, 15), (32, 18, 44), (10, 10, 0), (8, 10, -25)])
def test_percent_reduction(b, p, pct):
    assert percent_reduction(b, p) == pct


def test_percent_reduction_zero_baseline():
    with pytest.raises(ZeroDivisionError):
        percent_reduction(0, 3)


def test_structured_round_trip(encoders513):
    for res in encoders513.values():
        text = export_structured(res.circuit)
        back = parse_structured(text)
        assert back == res.circuit
        assert export_structured(back) == text


def test_structured_parse_errors():
    with pytest.raises(ValueError, match="line 3"):
        parse_structured("d 3\nn 2\nbogus 1\n")
    with pytest.raises(ValueError, match="line 4"):
        parse_structured("d 3\nn 2\nops\nT 1 teleport 1\n")
    with pytest.raises(ValueError):
        parse_structured("n 2\nops\n")


def test_text_diagram(encoders513):
    text = export_text(encoders513["d3-proposed-4"].circuit)
    lines = text.splitlines()
    assert lines[0].startswith("# d=3 n=5")
    assert len(lines) == 2 + 5
    assert "SWAP" not in text and "x" in lines[5] and "x" in lines[6]
    assert export_text(Circuit(3, 2)) == "# d=3 n=2 code= gateset=\n"


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate("add", (1, 1))
    with pytest.raises(ValueError):
        Gate("toffoli", (1,))
    with pytest.raises(ValueError):
        Gate("single", (1,))
    with pytest.raises(ValueError):
        Circuit(3, 2, [single(3)], gate_defs=DEFS)
    with pytest.raises(ValueError):
        Circuit(3, 2, [single(1, "M7")], gate_defs=DEFS)
    with pytest.raises(ValueError):
        Circuit(3, 2, [single(1, row=2), single(1, row=1)], gate_defs=DEFS)


def test_gate_words_and_fusion(encoders513):
    c = encoders513["d3-proposed-4"].circuit
    assert gate_words(c, 3) == {1: "M2", 3: "DFTR", 4: "DFTR", 5: "DFT"}
    fused = fuse_single_qudit(c)
    assert count_gates(fused).single_qudit_count == 14
    assert depth(fused) <= depth(c)


names = st.sampled_from([g.name for g in DEFS])


@st.composite
def circuits(draw, n=4):
    gates, row = [], 1
    for _ in range(draw(st.integers(0, 4))):
        for _ in range(draw(st.integers(0, 5))):
            gates.append(Gate("single", (draw(st.integers(1, n)),), draw(names), row, "T"))
        for _ in range(draw(st.integers(0, 3))):
            a, b = draw(st.permutations(range(1, n + 1)))[:2]
            gates.append(Gate(draw(st.sampled_from(["add", "swap"])), (a, b), "", row, "A"))
        row += 1
    return Circuit(3, n, gates, gate_defs=DEFS)


@settings(max_examples=80)
@given(circuits(), circuits())
def test_counts_add_and_depth_is_subadditive(c1, c2):
    both = c1 + c2
    m1, m2, m = count_gates(c1), count_gates(c2), count_gates(both)
    assert m.single_qudit_count == m1.single_qudit_count + m2.single_qudit_count
    assert m.two_qudit_count == m1.two_qudit_count + m2.two_qudit_count
    assert max(m1.depth, m2.depth) <= m.depth <= m1.depth + m2.depth


@settings(max_examples=80)
@given(circuits())
def test_depth_bounds(c):
    assert busiest_wire(c) <= depth(c) <= len(c)


@settings(max_examples=80)
@given(circuits(), st.permutations(range(1, 5)))
def test_relabelling_qudits_keeps_metrics(c, perm):
    relabel = {q: perm[q - 1] for q in range(1, 5)}
    moved = Circuit(
        c.d, c.n, [Gate(g.kind, tuple(relabel[q] for q in g.qudits), g.name, g.row, g.stage) for g in c.gates], gate_defs=DEFS
    )
    assert count_gates(moved) == count_gates(c)


@settings(max_examples=50)
@given(circuits())
def test_structured_round_trip_property(c):
    assert parse_structured(export_structured(c)) == c
