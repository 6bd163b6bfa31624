"""
Basic tests for the command-line entry point
"""
import pytest

from app.main import build_parser, main

COMMANDS = {"simulate", "label", "train", "classify", "select", "strain", "bench"}


def test_parser_registers_every_command():
    """Every pipeline stage is reachable as a subcommand"""
    parser = build_parser()
    subparsers = next(a for a in parser._actions if a.dest == "command")
    assert set(subparsers.choices) == COMMANDS


def test_help_exits_zero(capsys):
    """--help prints usage and succeeds"""
    assert main(["--help"]) == 0
    assert "elasto" in capsys.readouterr().out


@pytest.mark.parametrize("command", sorted(COMMANDS))
def test_subcommand_help(command, capsys):
    """Each subcommand documents its flags"""
    assert main([command, "--help"]) == 0
    assert "--" in capsys.readouterr().out


def test_missing_command_is_usage_error(capsys):
    """No subcommand is a usage error"""
    assert main([]) == 1
    assert "elasto" in capsys.readouterr().err


def test_unknown_flag_is_usage_error():
    """Unknown flags map to exit code 1"""
    assert main(["classify", "--bogus"]) == 1


def test_unhandled_error_maps_to_two(mocker, tmp_path):
    """Unexpected exceptions are logged and reported as data errors"""
    mocker.patch("app.cli.strain.load_frame", side_effect=RuntimeError("boom"))
    assert main(["strain", "--a", "a.rf", "--b", "b.rf", "--out", str(tmp_path / "s.pgm")]) == 2
