"""Finite-state machines: KISS2 I/O, encoding, and PLA controller synthesis.

A machine read from KISS2 is Mealy-style: each transition row carries an
input cube, current state, next state, and output bits. The subset handled
here requires at least one input and one output, binary outputs (no output
don't-cares), and deterministic rows -- two rows for the same state whose
input cubes overlap are rejected.

Synthesis uses the classic registered-PLA arrangement: state bits are fed
back from the first outputs to the first inputs through an external
register. With b state bits and k machine inputs the device sees b+k
inputs (state bits first, most significant) and drives b+q outputs
(next-state bits first). State codes are binary-counted in declaration
order with the reset state at code 0; unused codes are don't-cares. An
input combination no transition matches holds the current state with all
outputs 0 (or is an error under strict=True).

The encoding sidecar records what a fuse map alone cannot -- the state
assignment and the input/output split:

    PLAENC 1
    BITS 1
    INPUTS 1
    OUTPUTS 1
    STATE S0 0
    STATE S1 1
    END
"""

from dataclasses import dataclass, field

from . import minimize as mn
from .device import eval_pla
from .errors import FormatError
from .fit import fit
from .logic import cube_contains

_IN_CHARS = frozenset("01-")
_OUT_CHARS = frozenset("01")


@dataclass(frozen=True)
class Transition:
    input_cube: str
    current: str
    next_state: str
    outputs: str

    def line(self):
        return f"{self.input_cube} {self.current} {self.next_state} {self.outputs}"


@dataclass(frozen=True)
class Fsm:
    n_inputs: int
    n_outputs: int
    states: tuple
    reset: str
    transitions: tuple

    def __post_init__(self):
        if self.n_inputs < 1:
            raise ValueError("machine needs at least one input")
        if self.n_outputs < 1:
            raise ValueError("machine needs at least one output")
        states = tuple(self.states)
        object.__setattr__(self, "states", states)
        if len(set(states)) != len(states):
            raise ValueError(f"duplicate state names in {states}")
        if self.reset not in states:
            raise ValueError(f"reset state {self.reset!r} is not declared")
        transitions = tuple(self.transitions)
        object.__setattr__(self, "transitions", transitions)
        seen = set()
        for t in transitions:
            if len(t.input_cube) != self.n_inputs or set(t.input_cube) - _IN_CHARS:
                raise ValueError(
                    f"input cube {t.input_cube!r} is not {self.n_inputs} chars of 0/1/-"
                )
            if len(t.outputs) != self.n_outputs or set(t.outputs) - _OUT_CHARS:
                raise ValueError(
                    f"outputs {t.outputs!r} is not {self.n_outputs} chars of 0/1"
                )
            for s in (t.current, t.next_state):
                if s not in states:
                    raise ValueError(f"transition uses undeclared state {s!r}")
            if t in seen:
                raise ValueError(f"duplicate transition: {t.line()}")
            seen.add(t)
        # determinism: within one state, no two input cubes may overlap
        by_state = {}
        for t in transitions:
            by_state.setdefault(t.current, []).append(t)
        for state, rows in by_state.items():
            for i in range(len(rows)):
                for j in range(i + 1, len(rows)):
                    a, b = rows[i].input_cube, rows[j].input_cube
                    if all(
                        ca == "-" or cb == "-" or ca == cb for ca, cb in zip(a, b)
                    ):
                        raise ValueError(
                            f"state {state!r} has overlapping input cubes "
                            f"{a!r} and {b!r}"
                        )

    def transitions_from(self, state):
        return [t for t in self.transitions if t.current == state]


# ---------------------------------------------------------------------------
# KISS2


def parse_kiss2(text):
    """Parse the KISS2 subset: .i/.o required, binary outputs, .r optional.

    States are ordered by first appearance; without .r the first-mentioned
    state (the first transition's current state) is the reset state.
    Declared .s/.p counts that disagree with the body are errors.
    """
    n_in = n_out = None
    declared_s = declared_p = None
    reset = None
    transitions = []
    states = []
    seen_states = set()

    def note_state(name):
        if name not in seen_states:
            seen_states.add(name)
            states.append(name)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if line.startswith("."):
            key = parts[0]
            if key == ".i":
                n_in = _kiss_int(parts, lineno)
            elif key == ".o":
                n_out = _kiss_int(parts, lineno)
            elif key == ".s":
                declared_s = _kiss_int(parts, lineno)
            elif key == ".p":
                declared_p = _kiss_int(parts, lineno)
            elif key == ".r":
                if len(parts) != 2:
                    raise FormatError(f"line {lineno}: .r takes one state name")
                reset = parts[1]
            elif key in (".e", ".end"):
                break
            else:
                raise FormatError(f"line {lineno}: unsupported directive {key!r}")
            continue
        if n_in is None or n_out is None:
            raise FormatError(f"line {lineno}: transition before .i/.o declarations")
        if len(parts) != 4:
            raise FormatError(
                f"line {lineno}: expected '<inputs> <current> <next> <outputs>'"
            )
        cube, cur, nxt, outs = parts
        if len(cube) != n_in or set(cube) - _IN_CHARS:
            raise FormatError(
                f"line {lineno}: input cube {cube!r} is not {n_in} chars of 0/1/-"
            )
        if len(outs) != n_out or set(outs) - _OUT_CHARS:
            raise FormatError(
                f"line {lineno}: outputs {outs!r} is not {n_out} chars of 0/1 "
                "(output don't-cares are not supported)"
            )
        note_state(cur)
        note_state(nxt)
        transitions.append(Transition(cube, cur, nxt, outs))

    if n_in is None or n_out is None:
        raise FormatError("missing .i/.o declarations")
    if not transitions:
        raise FormatError("no transitions")
    if reset is None:
        reset = transitions[0].current
    elif reset not in seen_states:
        raise FormatError(f".r names unknown state {reset!r}")
    for declared, actual, what in (
        (declared_s, len(states), "states"),
        (declared_p, len(transitions), "transitions"),
    ):
        if declared is not None and declared != actual:
            raise FormatError(f"declared {declared} {what} but file has {actual}")
    try:
        return Fsm(n_in, n_out, tuple(states), reset, tuple(transitions))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def _kiss_int(parts, lineno):
    if len(parts) != 2:
        raise FormatError(f"line {lineno}: {parts[0]} takes one numeric argument")
    try:
        value = int(parts[1])
    except ValueError:
        raise FormatError(f"line {lineno}: bad count {parts[1]!r}") from None
    if value < 0:
        raise FormatError(f"line {lineno}: negative count {value}")
    return value


def write_kiss2(fsm):
    lines = [
        f".i {fsm.n_inputs}",
        f".o {fsm.n_outputs}",
        f".s {len(fsm.states)}",
        f".p {len(fsm.transitions)}",
        f".r {fsm.reset}",
    ]
    lines.extend(t.line() for t in fsm.transitions)
    lines.append(".e")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# State encoding


@dataclass(frozen=True)
class StateEncoding:
    """Binary state assignment plus the machine's input/output widths."""

    bits: int
    n_inputs: int
    n_outputs: int
    codes: tuple  # (state name, code) pairs, codes ascending

    def __post_init__(self):
        codes = tuple(self.codes)
        object.__setattr__(self, "codes", codes)
        if self.bits < 1:
            raise ValueError("encoding needs at least one state bit")
        values = [c for _, c in codes]
        if values != sorted(values) or len(set(values)) != len(values):
            raise ValueError("state codes must be unique and ascending")
        for name, c in codes:
            if not 0 <= c < (1 << self.bits):
                raise ValueError(f"code {c} for {name!r} needs more than {self.bits} bits")
        if not codes or codes[0][1] != 0:
            raise ValueError("code 0 (the reset state) must be assigned")
        names = [n for n, _ in codes]
        if len(set(names)) != len(names):
            raise ValueError("duplicate state name in encoding")

    def code_of(self, name):
        for n, c in self.codes:
            if n == name:
                return c
        raise KeyError(name)

    def code_str(self, name):
        return format(self.code_of(name), f"0{self.bits}b")

    def name_of(self, code):
        """State name for a code, or None for an unused code."""
        for n, c in self.codes:
            if c == code:
                return n
        return None

    @property
    def reset(self):
        return self.codes[0][0]


def default_encoding(fsm):
    """Binary-counted codes: reset gets 0, the rest follow declaration order."""
    s = len(fsm.states)
    bits = max(1, (s - 1).bit_length())
    codes = [(fsm.reset, 0)]
    nxt = 1
    for name in fsm.states:
        if name != fsm.reset:
            codes.append((name, nxt))
            nxt += 1
    return StateEncoding(bits, fsm.n_inputs, fsm.n_outputs, tuple(codes))


def emit_encoding(enc):
    lines = [
        "PLAENC 1",
        f"BITS {enc.bits}",
        f"INPUTS {enc.n_inputs}",
        f"OUTPUTS {enc.n_outputs}",
    ]
    lines.extend(f"STATE {name} {code}" for name, code in enc.codes)
    lines.append("END")
    return "\n".join(lines) + "\n"


def parse_encoding(text):
    lines = [l.rstrip("\r").strip() for l in text.split("\n")]
    lines = [l for l in lines if l]
    if not lines or lines[0].split() != ["PLAENC", "1"]:
        raise FormatError("not an encoding sidecar: missing 'PLAENC 1' header")
    fields = {}
    codes = []
    pos = 1
    for key in ("BITS", "INPUTS", "OUTPUTS"):
        if pos >= len(lines):
            raise FormatError(f"truncated encoding: expected {key}")
        parts = lines[pos].split()
        if len(parts) != 2 or parts[0] != key:
            raise FormatError(f"expected '{key} <count>', got {lines[pos]!r}")
        try:
            fields[key] = int(parts[1])
        except ValueError:
            raise FormatError(f"bad {key} count {parts[1]!r}") from None
        pos += 1
    while pos < len(lines) and lines[pos] != "END":
        parts = lines[pos].split()
        if len(parts) != 3 or parts[0] != "STATE":
            raise FormatError(f"expected 'STATE <name> <code>', got {lines[pos]!r}")
        try:
            codes.append((parts[1], int(parts[2])))
        except ValueError:
            raise FormatError(f"bad state code {parts[2]!r}") from None
        pos += 1
    if pos >= len(lines):
        raise FormatError("truncated encoding: expected END")
    if pos + 1 < len(lines):
        raise FormatError(f"content after END: {lines[pos + 1]!r}")
    codes.sort(key=lambda nc: nc[1])
    try:
        return StateEncoding(
            fields["BITS"], fields["INPUTS"], fields["OUTPUTS"], tuple(codes)
        )
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


# ---------------------------------------------------------------------------
# Synthesis


def fsm_to_covers(fsm, encoding=None, strict=False):
    """Lower a machine to next-state and output covers over (state bits, inputs).

    Returns (MultiOutputCover, dc_rows). Variable order is s0..s{b-1} then
    i0..i{k-1}, big-endian, so row index = state_code * 2^k + input_value.
    Each transition becomes one cube; each unmatched (state, input) pair
    becomes a hold-state minterm (none are needed for code 0). dc_rows are
    the rows of unused state codes.
    """
    if encoding is None:
        encoding = default_encoding(fsm)
    b, k, q = encoding.bits, fsm.n_inputs, fsm.n_outputs
    order = tuple(f"s{j}" for j in range(b)) + tuple(f"i{j}" for j in range(k))
    out_names = [f"ns{j}" for j in range(b)] + [f"o{j}" for j in range(q)]

    pool = []
    pool_index = {}
    selections = {name: [] for name in out_names}

    def add_cube(cube, targets):
        if cube not in pool_index:
            pool_index[cube] = len(pool)
            pool.append(cube)
        t = pool_index[cube]
        for name in targets:
            if t not in selections[name]:
                selections[name].append(t)

    for t in fsm.transitions:
        cube = encoding.code_str(t.current) + t.input_cube
        targets = [f"ns{j}" for j in range(b) if encoding.code_str(t.next_state)[j] == "1"]
        targets += [f"o{j}" for j in range(q) if t.outputs[j] == "1"]
        if targets:
            add_cube(cube, targets)

    unmatched = []
    for state in fsm.states:
        rows = fsm.transitions_from(state)
        code_str = encoding.code_str(state)
        hold_targets = [f"ns{j}" for j in range(b) if code_str[j] == "1"]
        for value in range(1 << k):
            bits = format(value, f"0{k}b")
            if any(cube_contains(t.input_cube, bits) for t in rows):
                continue
            unmatched.append((state, bits))
            if hold_targets:
                add_cube(code_str + bits, hold_targets)
    if strict and unmatched:
        shown = ", ".join(f"({s}, {bits})" for s, bits in unmatched[:5])
        raise ValueError(
            f"{len(unmatched)} unmatched state/input combinations, e.g. {shown}"
        )

    dc_rows = []
    used = {c for _, c in encoding.codes}
    for code in range(1 << b):
        if code not in used:
            dc_rows.extend(range(code << k, (code + 1) << k))

    mcover = mn.MultiOutputCover(
        order, tuple(pool), tuple((name, tuple(selections[name])) for name in out_names)
    )
    return mcover, sorted(dc_rows)


@dataclass(frozen=True)
class ControllerImage:
    """A programmed device plus the encoding that gives its bits meaning."""

    state: object
    encoding: StateEncoding
    input_names: tuple = field(default=())
    output_names: tuple = field(default=())


def synthesize_controller(fsm, profile, minimize=False, strict=False, encoding=None):
    """Program a device as the machine's next-state/output logic.

    Returns (ControllerImage, FitReport). With minimize=True each output
    function is minimized against the unused-code don't-cares before
    fitting; otherwise cubes mirror the transition rows.
    """
    if encoding is None:
        encoding = default_encoding(fsm)
    mcover, dc_rows = fsm_to_covers(fsm, encoding, strict=strict)
    if minimize:
        dc_set = frozenset(dc_rows)
        named = []
        for name in mcover.names:
            table = mcover.cover_for(name).to_table()
            spec = mn.MinimizeSpec(
                mcover.order, frozenset(table.on_set()) - dc_set, dc_set
            )
            named.append((name, mn.minimum_cover(mn.prime_implicants(spec), spec)))
        mcover = mn.share_terms(named)
    state, report = fit(mcover, profile)
    image = ControllerImage(
        state, encoding, report.input_names, report.output_names
    )
    return image, report


# ---------------------------------------------------------------------------
# Simulation


def simulate_fsm(fsm, input_seq):
    """Symbolic reference run: [(state name, outputs)] per cycle from reset.

    An input no transition matches holds the state and emits all zeros,
    mirroring the synthesized hold terms.
    """
    cur = fsm.reset
    trace = []
    for bits in input_seq:
        bits = _check_vector(bits, fsm.n_inputs)
        hit = None
        for t in fsm.transitions_from(cur):
            if cube_contains(t.input_cube, bits):
                hit = t
                break
        if hit is None:
            trace.append((cur, "0" * fsm.n_outputs))
        else:
            trace.append((cur, hit.outputs))
            cur = hit.next_state
    return trace


def simulate_controller(image, input_seq):
    """Cycle-accurate run of the programmed device: [(state code bits, outputs)].

    The register starts at code 0; each cycle evaluates the PLA on
    (state bits + input bits) and latches the next-state outputs.
    """
    enc = image.encoding
    b, k, q = enc.bits, enc.n_inputs, enc.n_outputs
    prof = image.state.profile
    pad = "0" * (prof.n_inputs - b - k)
    code = 0
    trace = []
    for bits in input_seq:
        bits = _check_vector(bits, k)
        outs = eval_pla(image.state, format(code, f"0{b}b") + bits + pad)
        trace.append((format(code, f"0{b}b"), outs[b : b + q]))
        code = int(outs[:b], 2)
    return trace


def _check_vector(bits, width):
    if not isinstance(bits, str):
        bits = "".join(str(x) for x in bits)
    if len(bits) != width or set(bits) - {"0", "1"}:
        raise ValueError(f"input {bits!r} is not {width} binary digits")
    return bits
