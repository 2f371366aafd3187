import json

from boecherer.cli import main


def test_class_group_command(capsys):
    assert main(["class", "group", "-d", "-23"]) == 0
    out = capsys.readouterr().out
    assert "h = 3" in out and "(2,-1,3)" in out


def test_class_chars_command(capsys):
    assert main(["class", "chars", "-d", "-84"]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 5


def test_local_commands(capsys):
    assert main(["local", "unram", "--type", "I", "--l", "-1"]) == 0
    assert main(["local", "unram", "--type", "IIb"]) == 0
    assert main(["local", "coset", "--x", "1/9", "--y", "1/3", "--z", "1/3", "--u", "3", "--p", "3"]) == 0
    assert "h(3,0)" in capsys.readouterr().out
    assert main(["local", "table"]) == 0


def test_sk_commands(capsys):
    assert main(["sk", "coeffs", "-k", "10", "--dmax", "8"]) == 0
    assert "4 -2" in capsys.readouterr().out
    assert main(["sk", "ratio", "-k", "10", "--d1", "-3", "--d2", "-4", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data[0]["pass"] is True


def test_arch_command(capsys):
    assert main(["arch", "check", "-k", "6"]) == 0
    assert capsys.readouterr().out.startswith("PASS")


def test_suite_command_with_config(tmp_path, capsys):
    cfg = tmp_path / "s.ini"
    cfg.write_text("[suite]\nchecks = local-unram\n")
    out = tmp_path / "o.json"
    assert main(["suite", "--config", str(cfg), "--json", str(out)]) == 0
    assert len(json.loads(out.read_text())) == 3
    cfg.write_text("[suite]\nchecks = nope\n")
    assert main(["suite", "--config", str(cfg)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_errors_exit_nonzero(capsys):
    assert main(["class", "group", "-d", "-12"]) == 2
    assert "not a negative fundamental" in capsys.readouterr().err
