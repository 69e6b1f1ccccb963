import random

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

import reference_bf
from hohoho.codec import FULL8, LOOPLESS4, Command, parse_bf, print_bf
from hohoho.errors import UnbalancedBrackets
from hohoho import vm
from hohoho.vm import EofPolicy, Halt, MachineConfig, check_subset, compile_program, run

from strategies import bf_programs, random_bf

C = Command
WIKI_HELLO = (
    "++++++++[>++++[>++>+++>+++>+<<<<-]>+>+>->>+[<]<-]>>."
    ">---.+++++++..+++.>>.<-.<.+++.------.--------.>>+.>++."
)
SMALL = MachineConfig(initial_tape_cells=64, step_limit=20_000)


def bf(text, data=b"", cfg=MachineConfig()):
    return run(compile_program(parse_bf(text)), data, cfg)


def test_compile_pairs_brackets():
    p = compile_program([C.LOOP_OPEN, C.LOOP_CLOSE])
    assert p.jumps == {0: 1, 1: 0}
    assert compile_program([]).cmds == ()


@pytest.mark.parametrize("text, index", [("]", 0), ("[", 0), ("+[[]", 1), ("[]]", 2)])
def test_compile_unbalanced(text, index):
    with pytest.raises(UnbalancedBrackets) as e:
        compile_program(parse_bf(text))
    assert e.value.index == index


@given(bf_programs())
def test_jump_table_is_an_involution(text):
    p = compile_program(parse_bf(text))
    brackets = {i for i, c in enumerate(p.cmds) if c in (C.LOOP_OPEN, C.LOOP_CLOSE)}
    assert set(p.jumps) == brackets
    for i, j in p.jumps.items():
        assert p.jumps[j] == i


def test_three_increments():
    r = bf("+++.")
    assert r.output == bytes([3]) and r.halt is Halt.FINISHED and r.steps == 4


def test_empty_program():
    r = bf("")
    assert r.output == b"" and r.steps == 0 and r.halt is Halt.FINISHED


def test_hello_world_matches_reference():
    r = bf(WIKI_HELLO)
    assert r.halt is Halt.FINISHED
    assert r.output == reference_bf.interpret(WIKI_HELLO) == b"Hello World!\n"


def test_wraparound():
    r = bf("-")
    assert r.tape[0] == 255
    assert bf("+" * 256).tape[0] == 0
    assert bf("-", cfg=MachineConfig(cell_bits=16)).tape[0] == 0xFFFF
    assert bf("-", cfg=MachineConfig(cell_bits=32)).tape[0] == 0xFFFFFFFF


def test_output_uses_low_byte():
    r = bf("-.", cfg=MachineConfig(cell_bits=16))
    assert r.output == b"\xff"


def test_underflow():
    r = bf("+.<.")
    assert r.halt is Halt.TAPE_UNDERFLOW
    assert r.output == b"\x01" and r.ip == 2 and r.steps == 2


def test_eof_policies():
    assert bf("+,.", b"").output == b"\x01"
    assert bf("+,.", b"", MachineConfig(eof_policy=EofPolicy.ZERO)).output == b"\x00"
    assert bf(",.,.,.", b"AB").output == b"ABB"


def test_step_limit_keeps_partial_output():
    r = bf("+.[]", cfg=MachineConfig(step_limit=1000))
    assert r.halt is Halt.STEP_LIMIT
    assert r.output == b"\x01" and r.steps == 1000


def test_step_limit_boundary():
    assert bf("+++", cfg=MachineConfig(step_limit=3)).halt is Halt.FINISHED
    assert bf("++++", cfg=MachineConfig(step_limit=3)).halt is Halt.STEP_LIMIT


def test_tape_grows_right():
    r = bf(">" * 10 + "+.", cfg=MachineConfig(initial_tape_cells=2))
    assert r.output == b"\x01" and r.pointer == 10


def test_config_validation():
    with pytest.raises(ValueError):
        MachineConfig(cell_bits=12)
    with pytest.raises(ValueError):
        MachineConfig(step_limit=0)


def test_partial_program_halts_on_needed_jump():
    p = compile_program(parse_bf("+[.-"), partial=True)
    assert run(p).output == b"\x01" and run(p).halt is Halt.FINISHED
    p = compile_program(parse_bf("[+"), partial=True)
    assert run(p).halt is Halt.UNMATCHED_BRACKET


def test_check_subset():
    assert check_subset(parse_bf("+>."), LOOPLESS4) == []
    assert check_subset(parse_bf("[-]"), LOOPLESS4) == [(0, C.LOOP_OPEN), (2, C.LOOP_CLOSE)]
    assert check_subset(parse_bf("<,[]"), FULL8) == []


@given(bf_programs(max_len=40))
@settings(max_examples=60)
def test_agrees_with_reference(text):
    ours = bf(text, b"xyz", SMALL)
    try:
        ref = reference_bf.interpret(text, b"xyz", max_steps=SMALL.step_limit)
    except RuntimeError:
        assert ours.halt is not Halt.FINISHED
        return
    assert ours.halt is Halt.FINISHED and ours.output == ref


@given(bf_programs(max_len=40))
@settings(max_examples=40)
def test_deterministic(text):
    assert bf(text, b"q", SMALL) == bf(text, b"q", SMALL)


@given(bf_programs(max_len=60, alphabet="><+-,"))
def test_straight_line_step_count(text):
    r = bf(text, b"", SMALL)
    if r.halt is Halt.FINISHED:
        assert r.steps == len(text)


@given(bf_programs(max_len=60, alphabet=">+-.,[]"))
@settings(max_examples=60)
def test_no_underflow_without_move_left(text):
    assert bf(text, b"", SMALL).halt is not Halt.TAPE_UNDERFLOW


def test_random_programs_against_reference():
    rng = random.Random(7)
    for _ in range(30):
        cmds = random_bf(rng, 80)
        text = print_bf(cmds)
        ours = bf(text, b"abc", SMALL)
        try:
            ref = reference_bf.interpret(text, b"abc", SMALL.step_limit)
        except RuntimeError:
            continue
        assert ours.output == ref


@given(bf_programs(max_len=50), st.integers(min_value=1, max_value=300),
       st.binary(max_size=4))
@settings(max_examples=300, deadline=None)
def test_halt_state_matches_reference_trace(text, limit, data):
    out, steps, status, ip, ptr = reference_bf.trace(text, data, limit)
    r = run(compile_program(parse_bf(text)), data, MachineConfig(step_limit=limit))
    assert (r.output, r.steps, r.halt.value, r.ip, r.pointer) == (out, steps, status, ip, ptr)


def test_step_limit_inside_a_run():
    r = run(compile_program(parse_bf("+++++.")), b"", MachineConfig(step_limit=3))
    assert (r.steps, r.ip, r.tape[0], r.halt) == (3, 3, 3, Halt.STEP_LIMIT)
    r = run(compile_program(parse_bf(">><<<+")), b"", MachineConfig(step_limit=100))
    assert (r.steps, r.ip, r.halt) == (4, 4, Halt.TAPE_UNDERFLOW)


@pytest.fixture
def native_always(monkeypatch):
    monkeypatch.setattr(vm, "_NATIVE_MIN_STEPS", 0)


@given(bf_programs(max_len=50), st.integers(min_value=1, max_value=300),
       st.binary(max_size=4))
@settings(max_examples=300, deadline=None,
          suppress_health_check=[HealthCheck.function_scoped_fixture])
def test_generated_code_matches_reference_trace(native_always, text, limit, data):
    out, steps, status, ip, ptr = reference_bf.trace(text, data, limit)
    r = run(compile_program(parse_bf(text)), data, MachineConfig(step_limit=limit))
    assert (r.output, r.steps, r.halt.value, r.ip, r.pointer) == (out, steps, status, ip, ptr)


def test_generated_code_covers_deep_nesting(native_always):
    text = "+" + "[" * 12 + "-" + "]" * 12 + "."
    assert bf(text).output == b"\x00"
    assert bf(WIKI_HELLO).output == b"Hello World!\n"
