"""
State machines onto registered PLAs
===================================

KISS2 in, programmed controller out: the state register feeds the first
device inputs from the first device outputs, and an encoding sidecar
records the state assignment.
"""

from plakit import (
    PlaProfile,
    emit_encoding,
    parse_kiss2,
    render_crosspoint_diagram,
    simulate_controller,
    simulate_fsm,
    synthesize_controller,
)

# A '11' sequence detector, Mealy style: output 1 on the second 1 in a row.
# Unlisted (state, input) pairs hold the state with outputs low.
source = """\
.i 1
.o 1
.s 2
.r IDLE
1 IDLE SAW1 0
1 SAW1 SAW1 1
0 SAW1 IDLE 0
.e
"""
machine = parse_kiss2(source)
print("states:", machine.states, "| reset:", machine.reset)

# One state bit + one input = 2 device inputs; next-state bit + output = 2
# device outputs. The synthesized image and its encoding travel together.
image, report = synthesize_controller(machine, PlaProfile(2, 4, 2), minimize=True)
print()
print(report.summary())
print(emit_encoding(image.encoding))
print(render_crosspoint_diagram(
    image.state, image.input_names, image.output_names
))

# Clock it. The symbolic interpreter runs the transition table directly;
# the controller run evaluates the programmed planes every cycle. They
# agree cycle for cycle, which is the whole point.
stimulus = list("011011101")
print("in :", " ".join(stimulus))
symbolic = simulate_fsm(machine, stimulus)
print("out:", " ".join(outs for _, outs in symbolic), "(symbolic)")
device = simulate_controller(image, stimulus)
print("out:", " ".join(outs for _, outs in device), "(programmed device)")
states = [image.encoding.name_of(int(code, 2)) for code, _ in device]
print("state by cycle:", " ".join(states))
