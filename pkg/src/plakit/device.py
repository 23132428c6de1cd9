"""PLA device model: planes of crosspoints, evaluation, and stuck faults.

A device has p AND rows (product terms) by 2n AND columns -- column 2j
carries input j true, column 2j+1 carries its complement -- and m OR rows
by p columns. A stored 1 always means "connected", whichever switch
technology the profile names: fuse arrays start fully connected and are
blown open, antifuse arrays start open and are programmed closed. The
starting image differs; the meaning of the programmed image does not.

Evaluation rules fall out of wired-AND/wired-OR behaviour:
  * an AND row with no connections is the constant-1 product;
  * an AND row connected to both polarities of one input is constant 0;
  * an OR row with no connections is constant 0;
  * a set polarity bit complements that output (the macrocell XOR), which
    is how a product-of-sums form is realized on sum-of-products hardware.

The fault model is the single stuck crosspoint: one crosspoint reads as
connected or as disconnected no matter what was programmed. OR-plane fault
coordinates are (output row, term column), matching the stored or_plane.
"""

from dataclasses import dataclass, replace

from .logic import MAX_VARS, _var_mask, minterm_cube

SWITCH_TECHS = ("fuse", "antifuse")
PLANES = ("and", "or")
STUCK_MODES = ("connected", "disconnected")


@dataclass(frozen=True)
class PlaProfile:
    """Capacities and features of a target device."""

    n_inputs: int
    n_terms: int
    n_outputs: int
    switch_tech: str = "fuse"
    has_output_xor: bool = False

    def __post_init__(self):
        for field_name in ("n_inputs", "n_terms", "n_outputs"):
            v = getattr(self, field_name)
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"{field_name} must be a positive int, got {v!r}")
        if self.n_inputs > MAX_VARS:
            raise ValueError(
                f"n_inputs {self.n_inputs} exceeds the simulation limit of {MAX_VARS}"
            )
        if self.switch_tech not in SWITCH_TECHS:
            raise ValueError(f"switch_tech must be one of {SWITCH_TECHS}")


def _check_matrix(name, matrix, n_rows, n_cols):
    matrix = tuple(tuple(row) for row in matrix)
    if len(matrix) != n_rows:
        raise ValueError(f"{name} has {len(matrix)} rows, expected {n_rows}")
    for r, row in enumerate(matrix):
        if len(row) != n_cols:
            raise ValueError(f"{name} row {r} has {len(row)} columns, expected {n_cols}")
        for bit in row:
            if bit not in (0, 1):
                raise ValueError(f"{name} row {r} has non-binary entry {bit!r}")
    return matrix


@dataclass(frozen=True)
class PlaState:
    """One programmed image of a device: 1 = crosspoint connected."""

    profile: PlaProfile
    and_plane: tuple  # p rows x 2n columns
    or_plane: tuple  # m rows x p columns
    polarity: tuple  # m bits

    def __post_init__(self):
        p = self.profile
        object.__setattr__(
            self,
            "and_plane",
            _check_matrix("and_plane", self.and_plane, p.n_terms, 2 * p.n_inputs),
        )
        object.__setattr__(
            self,
            "or_plane",
            _check_matrix("or_plane", self.or_plane, p.n_outputs, p.n_terms),
        )
        polarity = tuple(self.polarity)
        if len(polarity) != p.n_outputs:
            raise ValueError(
                f"polarity has {len(polarity)} bits, expected {p.n_outputs}"
            )
        for bit in polarity:
            if bit not in (0, 1):
                raise ValueError(f"polarity bit must be 0 or 1, got {bit!r}")
        if any(polarity) and not p.has_output_xor:
            raise ValueError("polarity bits set but profile has no output XOR")
        object.__setattr__(self, "polarity", polarity)


def blank_device(profile):
    """The unprogrammed image: fuse arrays all connected, antifuse all open."""
    bit = 1 if profile.switch_tech == "fuse" else 0
    and_plane = tuple(
        tuple(bit for _ in range(2 * profile.n_inputs)) for _ in range(profile.n_terms)
    )
    or_plane = tuple(
        tuple(bit for _ in range(profile.n_terms)) for _ in range(profile.n_outputs)
    )
    return PlaState(profile, and_plane, or_plane, (0,) * profile.n_outputs)


def _set_bit(matrix, row, col, value):
    new_row = list(matrix[row])
    new_row[col] = value
    return matrix[:row] + (tuple(new_row),) + matrix[row + 1 :]


def set_crosspoint(state, plane, row, col, connected):
    """Return a new image with one crosspoint forced to `connected` (0 or 1)."""
    if plane not in PLANES:
        raise ValueError(f"plane must be one of {PLANES}, got {plane!r}")
    if connected not in (0, 1):
        raise ValueError(f"crosspoint value must be 0 or 1, got {connected!r}")
    matrix = state.and_plane if plane == "and" else state.or_plane
    if not (0 <= row < len(matrix) and 0 <= col < len(matrix[0])):
        raise ValueError(f"{plane} plane has no crosspoint ({row}, {col})")
    updated = _set_bit(matrix, row, col, connected)
    if plane == "and":
        return replace(state, and_plane=updated)
    return replace(state, or_plane=updated)


def set_polarity(state, index, bit):
    if not state.profile.has_output_xor:
        raise ValueError("profile has no output XOR; polarity is fixed at 0")
    if bit not in (0, 1):
        raise ValueError(f"polarity bit must be 0 or 1, got {bit!r}")
    if not 0 <= index < state.profile.n_outputs:
        raise ValueError(f"no output {index}")
    polarity = list(state.polarity)
    polarity[index] = bit
    return replace(state, polarity=tuple(polarity))


# ---------------------------------------------------------------------------
# Evaluation


def eval_pla(state, bits):
    """Evaluate one input vector; returns the m-character output string."""
    n = state.profile.n_inputs
    if len(bits) != n or set(bits) - {"0", "1"}:
        raise ValueError(f"input {bits!r} is not {n} binary digits")
    terms = []
    for row in state.and_plane:
        active = 1
        for j in range(n):
            true_conn, comp_conn = row[2 * j], row[2 * j + 1]
            value = bits[j] == "1"
            if (true_conn and not value) or (comp_conn and value):
                active = 0
                break
        terms.append(active)
    out = []
    for o, or_row in enumerate(state.or_plane):
        raw = 0
        for t, conn in enumerate(or_row):
            if conn and terms[t]:
                raw = 1
                break
        out.append(str(raw ^ state.polarity[o]))
    return "".join(out)


def output_masks(state):
    """Bit-parallel exhaustive evaluation: one 2^n-bit mask per output."""
    n = state.profile.n_inputs
    full = (1 << (1 << n)) - 1
    term_masks = []
    for row in state.and_plane:
        mask = full
        for j in range(n):
            if row[2 * j]:
                mask &= _var_mask(n, j)
            if row[2 * j + 1]:
                mask &= full ^ _var_mask(n, j)
        term_masks.append(mask)
    outs = []
    for o, or_row in enumerate(state.or_plane):
        mask = 0
        for t, conn in enumerate(or_row):
            if conn:
                mask |= term_masks[t]
        if state.polarity[o]:
            mask ^= full
        outs.append(mask)
    return tuple(outs)


# ---------------------------------------------------------------------------
# Stuck-crosspoint faults


@dataclass(frozen=True)
class Fault:
    """One crosspoint stuck connected or disconnected."""

    plane: str
    row: int
    col: int
    stuck: str

    def __post_init__(self):
        if self.plane not in PLANES:
            raise ValueError(f"plane must be one of {PLANES}, got {self.plane!r}")
        if self.stuck not in STUCK_MODES:
            raise ValueError(f"stuck must be one of {STUCK_MODES}, got {self.stuck!r}")

    def __str__(self):
        return f"{self.plane}[{self.row},{self.col}] stuck-{self.stuck}"


def inject_fault(state, fault):
    """Image as the faulty part would behave: the crosspoint reads `stuck`."""
    value = 1 if fault.stuck == "connected" else 0
    return set_crosspoint(state, fault.plane, fault.row, fault.col, value)


def enumerate_faults(profile):
    """Every single stuck-crosspoint fault, in a fixed deterministic order."""
    faults = []
    for row in range(profile.n_terms):
        for col in range(2 * profile.n_inputs):
            for stuck in STUCK_MODES:
                faults.append(Fault("and", row, col, stuck))
    for row in range(profile.n_outputs):
        for col in range(profile.n_terms):
            for stuck in STUCK_MODES:
                faults.append(Fault("or", row, col, stuck))
    return faults


def find_test_vector(state, fault):
    """Lowest input vector whose outputs expose the fault, or None.

    None means the fault is undetectable on this image -- usually because
    the stuck value equals the programmed value, or the crosspoint feeds
    nothing observable.
    """
    faulty = inject_fault(state, fault)
    diff = 0
    for good, bad in zip(output_masks(state), output_masks(faulty)):
        diff |= good ^ bad
    if diff == 0:
        return None
    row = (diff & -diff).bit_length() - 1
    return minterm_cube(row, state.profile.n_inputs)


# ---------------------------------------------------------------------------
# Diagram


def render_crosspoint_diagram(state, input_names=None, output_names=None):
    """ASCII crosspoint map: X connected, . open, AND plane | OR plane.

    Each input owns a true/complement column pair; each line below the
    header is one product term showing which outputs it feeds. A POL line
    appears only on devices with the output XOR.
    """
    prof = state.profile
    if input_names is None:
        input_names = [f"x{j}" for j in range(prof.n_inputs)]
    if output_names is None:
        output_names = [f"f{o}" for o in range(prof.n_outputs)]
    if len(input_names) != prof.n_inputs:
        raise ValueError(f"expected {prof.n_inputs} input names")
    if len(output_names) != prof.n_outputs:
        raise ValueError(f"expected {prof.n_outputs} output names")

    and_labels = []
    for name in input_names:
        and_labels.append(name)
        and_labels.append(name + "'")
    term_labels = [f"T{t}" for t in range(prof.n_terms)]
    left_w = max(len(s) for s in term_labels + ["POL"]) + 2
    and_ws = [len(s) + 1 for s in and_labels]
    or_ws = [len(s) + 1 for s in output_names]

    lines = []
    header = "".ljust(left_w)
    header += "".join(s.ljust(w) for s, w in zip(and_labels, and_ws))
    header += "| " + "".join(s.ljust(w) for s, w in zip(output_names, or_ws))
    lines.append(header.rstrip())
    for t in range(prof.n_terms):
        line = term_labels[t].ljust(left_w)
        line += "".join(
            ("X" if bit else ".").ljust(w)
            for bit, w in zip(state.and_plane[t], and_ws)
        )
        line += "| " + "".join(
            ("X" if state.or_plane[o][t] else ".").ljust(w)
            for o, w in zip(range(prof.n_outputs), or_ws)
        )
        lines.append(line.rstrip())
    if prof.has_output_xor:
        line = "POL".ljust(left_w) + " " * sum(and_ws)
        line += "| " + "".join(
            str(bit).ljust(w) for bit, w in zip(state.polarity, or_ws)
        )
        lines.append(line.rstrip())
    return "\n".join(lines) + "\n"
