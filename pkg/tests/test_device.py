import pytest

from plakit import (
    Fault,
    PlaProfile,
    PlaState,
    blank_device,
    enumerate_faults,
    eval_pla,
    find_test_vector,
    inject_fault,
    output_masks,
    render_crosspoint_diagram,
    set_crosspoint,
    set_polarity,
)
from oracles import eval_pla_naive, random_profile, random_state, seeded


def majority_device():
    # BC + AC + AB on a 3x3x1 device
    return PlaState(
        PlaProfile(3, 3, 1),
        ((0, 0, 1, 0, 1, 0), (1, 0, 0, 0, 1, 0), (1, 0, 1, 0, 0, 0)),
        ((1, 1, 1),),
        (0,),
    )


def all_inputs(n):
    return [format(r, f"0{n}b") for r in range(1 << n)]


def test_profile_validation():
    with pytest.raises(ValueError):
        PlaProfile(0, 1, 1)
    with pytest.raises(ValueError):
        PlaProfile(1, 1, 1, switch_tech="eeprom")
    with pytest.raises(ValueError):
        PlaProfile(25, 1, 1)
    prof = PlaProfile(2, 3, 1)
    assert prof.switch_tech == "fuse" and not prof.has_output_xor


def test_state_validation():
    prof = PlaProfile(2, 1, 1)
    with pytest.raises(ValueError, match="and_plane"):
        PlaState(prof, ((0, 0),), ((0,),), (0,))
    with pytest.raises(ValueError, match="or_plane"):
        PlaState(prof, ((0, 0, 0, 0),), ((0, 0),), (0,))
    with pytest.raises(ValueError, match="polarity"):
        PlaState(prof, ((0, 0, 0, 0),), ((0,),), (0, 0))
    with pytest.raises(ValueError, match="XOR"):
        PlaState(prof, ((0, 0, 0, 0),), ((0,),), (1,))


def test_blank_fuse_device_outputs_zero_everywhere():
    state = blank_device(PlaProfile(3, 4, 2))
    assert all(all(bit == 1 for bit in row) for row in state.and_plane)
    for bits in all_inputs(3):
        assert eval_pla(state, bits) == "00"


def test_blank_antifuse_device_outputs_zero_everywhere():
    state = blank_device(PlaProfile(3, 4, 2, switch_tech="antifuse"))
    assert all(all(bit == 0 for bit in row) for row in state.and_plane)
    for bits in all_inputs(3):
        assert eval_pla(state, bits) == "00"


def test_empty_and_row_is_constant_one():
    prof = PlaProfile(2, 1, 1)
    state = PlaState(prof, ((0, 0, 0, 0),), ((1,),), (0,))
    for bits in all_inputs(2):
        assert eval_pla(state, bits) == "1"


def test_contradictory_and_row_is_constant_zero():
    prof = PlaProfile(2, 1, 1)
    state = PlaState(prof, ((1, 1, 0, 0),), ((1,),), (0,))
    for bits in all_inputs(2):
        assert eval_pla(state, bits) == "0"


def test_unconnected_or_row_is_constant_zero():
    prof = PlaProfile(2, 1, 1)
    state = PlaState(prof, ((0, 0, 0, 0),), ((0,),), (0,))
    for bits in all_inputs(2):
        assert eval_pla(state, bits) == "0"


def test_single_literal_rows():
    prof = PlaProfile(2, 2, 2)
    # term 0 = x0, term 1 = x1'; f0 = x0, f1 = x1'
    state = PlaState(prof, ((1, 0, 0, 0), (0, 0, 0, 1)), ((1, 0), (0, 1)), (0, 0))
    assert eval_pla(state, "00") == "01"
    assert eval_pla(state, "01") == "00"
    assert eval_pla(state, "10") == "11"
    assert eval_pla(state, "11") == "10"


def test_majority_device_reproduces_truth_table():
    state = majority_device()
    want = "00010111"  # rows 000..111
    got = "".join(eval_pla(state, bits) for bits in all_inputs(3))
    assert got == want


def test_eval_pla_input_validation():
    state = majority_device()
    with pytest.raises(ValueError):
        eval_pla(state, "01")
    with pytest.raises(ValueError):
        eval_pla(state, "01x")


def test_eval_matches_naive_oracle_on_random_devices():
    rng = seeded(37)
    for _ in range(60):
        prof = random_profile(rng)
        state = random_state(rng, prof)
        masks = output_masks(state)
        for row, bits in enumerate(all_inputs(prof.n_inputs)):
            want = eval_pla_naive(state, bits)
            assert eval_pla(state, bits) == want
            got_masked = "".join(str((m >> row) & 1) for m in masks)
            assert got_masked == want


def test_set_crosspoint_is_persistent_style():
    state = majority_device()
    new = set_crosspoint(state, "and", 0, 0, 1)
    assert state.and_plane[0][0] == 0  # original untouched
    assert new.and_plane[0][0] == 1
    assert new.and_plane[1:] == state.and_plane[1:]
    back = set_crosspoint(new, "and", 0, 0, 0)
    assert back == state
    orr = set_crosspoint(state, "or", 0, 2, 0)
    assert orr.or_plane[0] == (1, 1, 0)


def test_set_crosspoint_validation():
    state = majority_device()
    with pytest.raises(ValueError):
        set_crosspoint(state, "nor", 0, 0, 1)
    with pytest.raises(ValueError):
        set_crosspoint(state, "and", 3, 0, 1)
    with pytest.raises(ValueError):
        set_crosspoint(state, "or", 0, 9, 1)
    with pytest.raises(ValueError):
        set_crosspoint(state, "and", 0, 0, 2)


def test_polarity_complements_every_vector():
    prof = PlaProfile(3, 3, 1, has_output_xor=True)
    base = majority_device()
    state = PlaState(prof, base.and_plane, base.or_plane, (0,))
    flipped = set_polarity(state, 0, 1)
    for bits in all_inputs(3):
        good = eval_pla(state, bits)
        assert eval_pla(flipped, bits) == str(1 - int(good))
    assert set_polarity(flipped, 0, 0) == state


def test_polarity_requires_xor_feature():
    state = majority_device()
    with pytest.raises(ValueError, match="XOR"):
        set_polarity(state, 0, 1)
    prof = PlaProfile(3, 3, 1, has_output_xor=True)
    ok = PlaState(prof, state.and_plane, state.or_plane, (0,))
    with pytest.raises(ValueError):
        set_polarity(ok, 1, 1)
    with pytest.raises(ValueError):
        set_polarity(ok, 0, 2)


def test_fuse_and_antifuse_agree_with_equal_connectivity():
    base = majority_device()
    anti_prof = PlaProfile(3, 3, 1, switch_tech="antifuse")
    anti = PlaState(anti_prof, base.and_plane, base.or_plane, base.polarity)
    assert output_masks(anti) == output_masks(base)
    for bits in all_inputs(3):
        assert eval_pla(anti, bits) == eval_pla(base, bits)


def test_fault_formatting_and_validation():
    f = Fault("and", 2, 3, "connected")
    assert str(f) == "and[2,3] stuck-connected"
    assert str(Fault("or", 0, 1, "disconnected")) == "or[0,1] stuck-disconnected"
    with pytest.raises(ValueError):
        Fault("buf", 0, 0, "connected")
    with pytest.raises(ValueError):
        Fault("and", 0, 0, "high")


def test_enumerate_faults_covers_both_planes():
    prof = PlaProfile(2, 3, 2)
    faults = enumerate_faults(prof)
    assert len(faults) == 2 * (3 * 4) + 2 * (2 * 3)
    assert faults[0] == Fault("and", 0, 0, "connected")
    assert faults[1] == Fault("and", 0, 0, "disconnected")
    and_part = [f for f in faults if f.plane == "and"]
    assert faults[: len(and_part)] == and_part  # AND plane first
    assert len(set(faults)) == len(faults)


def test_inject_fault_forces_the_bit():
    state = majority_device()
    stuck1 = inject_fault(state, Fault("and", 0, 0, "connected"))
    assert stuck1.and_plane[0][0] == 1
    stuck0 = inject_fault(state, Fault("or", 0, 1, "disconnected"))
    assert stuck0.or_plane[0][1] == 0
    # stuck at the programmed value changes nothing
    same = inject_fault(state, Fault("and", 0, 2, "connected"))
    assert same == state


def test_inject_then_restore_round_trip():
    rng = seeded(41)
    for _ in range(20):
        prof = random_profile(rng)
        state = random_state(rng, prof)
        for fault in rng.sample(enumerate_faults(prof), 5):
            matrix = state.and_plane if fault.plane == "and" else state.or_plane
            original = matrix[fault.row][fault.col]
            faulted = inject_fault(state, fault)
            restored = set_crosspoint(
                faulted, fault.plane, fault.row, fault.col, original
            )
            assert restored == state


def test_find_test_vector_majority():
    state = majority_device()
    # dropping the BC term loses only row 011 (others still covered)
    vec = find_test_vector(state, Fault("or", 0, 0, "disconnected"))
    assert vec == "011"
    faulted = inject_fault(state, Fault("or", 0, 0, "disconnected"))
    assert eval_pla(state, vec) != eval_pla(faulted, vec)
    # stuck at the programmed value is undetectable
    assert find_test_vector(state, Fault("or", 0, 0, "connected")) is None
    # adding the A literal to the BC row: term becomes ABC, row 011 lost
    assert find_test_vector(state, Fault("and", 0, 0, "connected")) == "011"


def test_find_test_vector_reports_lowest_row():
    prof = PlaProfile(2, 1, 1)
    state = PlaState(prof, ((0, 0, 0, 0),), ((1,),), (0,))
    # killing the constant-1 term changes every row; lowest is 00
    assert find_test_vector(state, Fault("or", 0, 0, "disconnected")) == "00"


def test_diagram_golden_majority():
    want = (
        "     A A' B B' C C' | M\n"
        "T0   . .  X .  X .  | X\n"
        "T1   X .  . .  X .  | X\n"
        "T2   X .  X .  . .  | X\n"
    )
    assert render_crosspoint_diagram(majority_device(), ["A", "B", "C"], ["M"]) == want


def test_diagram_golden_default_names_and_pol():
    state = PlaState(
        PlaProfile(2, 2, 1, has_output_xor=True),
        ((1, 0, 0, 1), (0, 0, 1, 0)),
        ((1, 0),),
        (1,),
    )
    want = (
        "     x0 x0' x1 x1' | f0\n"
        "T0   X  .   .  X   | X\n"
        "T1   .  .   X  .   | .\n"
        "POL                | 1\n"
    )
    assert render_crosspoint_diagram(state) == want


def test_diagram_name_count_validation():
    with pytest.raises(ValueError):
        render_crosspoint_diagram(majority_device(), ["A"], ["M"])
    with pytest.raises(ValueError):
        render_crosspoint_diagram(majority_device(), ["A", "B", "C"], [])
