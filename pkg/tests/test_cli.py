"""Command-line interface: every subcommand end to end through main()."""

import random
from pathlib import Path

import pytest

from lotkip.cli import main
from lotkip.codec import FrameLayout, container_to_frames

SESSION_TEXT = """
tk = 000102030405060708090a0b0c0d0e0f
mic_key_tx = 0011223344556677
mic_key_rx = 0011223344556677
ta = 105027ab9c4d
mode = {mode}
K = 4
frag_threshold = 256
"""

SCENARIO_TEXT = """
nodes = 16
placement = grid
R = 170
alpha = 0.75
P_list = 256,512
packets = 200
scenarios = 3
scheme = both
seed = 5
"""


@pytest.fixture
def session_file(tmp_path):
    def write(mode="tkip"):
        path = tmp_path / f"session-{mode}.cfg"
        path.write_text(SESSION_TEXT.format(mode=mode))
        return str(path)
    return write


def test_table1_writes_golden_csv(tmp_path, capsys):
    out = tmp_path / "table.csv"
    assert main(["table1", "--csv", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "m,mic,crc,keymix_case1,keymix_case2,rc4,tkip_case1,tkip_case2"
    assert len(lines) == 9
    assert lines[1].split(",")[6] == "88063"
    err = capsys.readouterr().err
    assert "87668" in err            # the m=80 note is part of every run
    first = out.read_bytes()
    assert main(["table1", "--csv", str(out)]) == 0
    assert out.read_bytes() == first


def test_table1_stdout(capsys):
    assert main(["table1"]) == 0
    captured = capsys.readouterr()
    assert captured.out.startswith("m,mic,")
    assert "88063" in captured.out


@pytest.mark.parametrize("mode", ["tkip", "lotkip"])
def test_seal_open_round_trip(tmp_path, session_file, mode):
    payload = tmp_path / "payload.bin"
    payload.write_bytes(random.Random(4).randbytes(1024))
    sealed = tmp_path / "sealed.bin"
    opened = tmp_path / "opened.bin"
    cfg = session_file(mode)
    assert main(["seal", "--config", cfg, "--in", str(payload),
                 "--out", str(sealed), "--msdu-bytes", "100"]) == 0
    assert main(["open", "--config", cfg, "--in", str(sealed),
                 "--out", str(opened), "--msdu-bytes", "100"]) == 0
    assert opened.read_bytes() == payload.read_bytes()


def test_open_names_failed_check(tmp_path, session_file, capsys):
    payload = tmp_path / "p.bin"
    payload.write_bytes(b"A" * 64)
    sealed = tmp_path / "s.bin"
    cfg = session_file("tkip")
    assert main(["seal", "--config", cfg, "--in", str(payload),
                 "--out", str(sealed)]) == 0
    blob = bytearray(sealed.read_bytes())
    blob[4 + 8 + 10] ^= 0x40                 # flip a ciphertext bit
    sealed.write_bytes(bytes(blob))
    out = tmp_path / "o.bin"
    assert main(["open", "--config", cfg, "--in", str(sealed),
                 "--out", str(out)]) == 1
    assert "IcvMismatch" in capsys.readouterr().err


def test_lotkip_seal_refresh_fraction(tmp_path, session_file):
    payload = tmp_path / "p.bin"
    payload.write_bytes(bytes(1000))
    sealed = tmp_path / "s.bin"
    assert main(["seal", "--config", session_file("lotkip"), "--in", str(payload),
                 "--out", str(sealed), "--msdu-bytes", "100"]) == 0
    frames = container_to_frames(sealed.read_bytes())
    assert len(frames) == 10
    a_idx = [i for i, f in enumerate(frames)
             if f.layout is FrameLayout.LOTKIP_TYPE_A]
    assert a_idx == [0, 4, 8]


def test_mode_override(tmp_path, session_file):
    payload = tmp_path / "p.bin"
    payload.write_bytes(b"override me")
    sealed = tmp_path / "s.bin"
    cfg = session_file("tkip")
    assert main(["seal", "--config", cfg, "--in", str(payload),
                 "--out", str(sealed), "--mode", "lotkip"]) == 0
    frames = container_to_frames(sealed.read_bytes())
    assert frames[0].layout is FrameLayout.LOTKIP_TYPE_A


def test_energy_command(capsys):
    assert main(["energy", "--m", "256", "--case", "1"]) == 0
    out = capsys.readouterr().out
    assert "cycles=1356683" in out
    assert "compute_uJ=26862.3234" in out
    assert main(["energy", "--m", "32", "--case", "2", "--subsequent",
                 "--frame-bytes", "276"]) == 0
    out = capsys.readouterr().out
    assert "cycles=59458" in out
    assert "tx_uJ=563.4800" in out


def test_energy_rejects_bad_m(capsys):
    assert main(["energy", "--m", "0"]) == 1


def test_sim_csv(tmp_path, capsys):
    scenario = tmp_path / "scenario.cfg"
    scenario.write_text(SCENARIO_TEXT)
    out = tmp_path / "sim.csv"
    assert main(["sim", "--scenario", str(scenario), "--csv", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 1 + 2 * 2           # 2 P x 2 schemes x 1 placement
    first = out.read_bytes()
    assert main(["sim", "--scenario", str(scenario), "--csv", str(out)]) == 0
    assert out.read_bytes() == first


def test_sim_scheme_override_doubles_rows(tmp_path):
    scenario = tmp_path / "scenario.cfg"
    scenario.write_text(SCENARIO_TEXT)
    out = tmp_path / "sim.csv"
    assert main(["sim", "--scenario", str(scenario), "--csv", str(out),
                 "--scheme", "lotkip"]) == 0
    single = len(out.read_text().strip().splitlines())
    assert main(["sim", "--scenario", str(scenario), "--csv", str(out),
                 "--scheme", "both"]) == 0
    both = len(out.read_text().strip().splitlines())
    assert both - 1 == 2 * (single - 1)


def test_sim_placement_override(tmp_path):
    scenario = tmp_path / "scenario.cfg"
    scenario.write_text(SCENARIO_TEXT)
    out = tmp_path / "sim.csv"
    assert main(["sim", "--scenario", str(scenario), "--csv", str(out),
                 "--placement", "both"]) == 0
    rows = out.read_text().strip().splitlines()[1:]
    assert {r.split(",")[2] for r in rows} == {"grid", "random"}


def test_sim_rejects_bad_scenario(tmp_path, capsys):
    scenario = tmp_path / "scenario.cfg"
    scenario.write_text("martians = 4")
    assert main(["sim", "--scenario", str(scenario), "--csv", "-"]) == 1
    assert "ScenarioError" in capsys.readouterr().err


def test_vectors_validate_repo_dir():
    repo_vectors = Path(__file__).resolve().parent.parent / "vectors"
    assert main(["vectors", "--dir", str(repo_vectors)]) == 0


def test_vectors_detect_tampering(tmp_path, capsys):
    assert main(["vectors", "--dir", str(tmp_path), "--write"]) == 0
    target = tmp_path / "crc32.txt"
    content = target.read_text()
    target.write_text(content.replace("2639f4cb", "2639f4cc"))
    assert main(["vectors", "--dir", str(tmp_path)]) == 1
    assert "mismatch" in capsys.readouterr().err
    assert main(["vectors", "--dir", str(tmp_path), "--write"]) == 0
    assert main(["vectors", "--dir", str(tmp_path)]) == 0


def test_unknown_flags_rejected():
    with pytest.raises(SystemExit) as exc:
        main(["table1", "--bogus"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main(["unknown-command"])


def test_missing_files_exit_nonzero(tmp_path, capsys):
    assert main(["seal", "--config", str(tmp_path / "nope.cfg"),
                 "--in", "x", "--out", "y"]) == 1
