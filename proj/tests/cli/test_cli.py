"""End-to-end checks of the vnfq command-line tool.

Usage: python3 test_cli.py /path/to/vnfq
"""

import os
import subprocess
import sys
import tempfile

BIN = sys.argv[1] if len(sys.argv) > 1 else "vnfq"

CONFIG = """\
p = 0.8
alpha = 0.5
mu1 = 0.5
mu2 = 0.5
mu3 = 0.5
mu4 = 0.5
mu5 = 0.5
mu6 = 0.9
M1 = 10
M2 = 10
M3 = 10
M4 = 10
M5 = 10
"""

failed = 0


def run(*args, expect=0):
    proc = subprocess.run([BIN, *args], capture_output=True, text=True)
    if proc.returncode != expect:
        raise AssertionError(
            f"{args}: exit {proc.returncode}, expected {expect}\n"
            f"stdout: {proc.stdout[-500:]}\nstderr: {proc.stderr[-500:]}")
    return proc


def check(name, fn):
    global failed
    try:
        fn()
        print(f"PASS {name}")
    except Exception as e:  # noqa: BLE001
        failed += 1
        print(f"FAIL {name}: {e}")


def read_csv(path):
    with open(path, "rb") as f:
        raw = f.read()
    lines = raw.decode("utf-8").splitlines()
    assert lines[0] == "# vnfq csv v1", f"schema line missing: {lines[0]}"
    data = [ln for ln in lines if not ln.startswith("#")]
    header = data[0].split(",")
    rows = [ln.split(",") for ln in data[1:]]
    return raw, header, rows


def main():
    tmp = tempfile.mkdtemp(prefix="vnfq_cli_")
    cfg = os.path.join(tmp, "ref.cfg")
    with open(cfg, "w") as f:
        f.write(CONFIG)

    def analyze_ok():
        proc = run("analyze", "-c", cfg)
        assert "P_D" in proc.stdout and "throughput (derived)" in proc.stdout
        assert "delay" in proc.stdout

    def analyze_override_route1_only():
        out = os.path.join(tmp, "a1.csv")
        run("analyze", "-c", cfg, "--alpha", "1.0", "--out", out)
        _, header, rows = read_csv(out)
        row = dict(zip(header, rows[0]))
        assert row["alpha"] == "1"
        assert float(row["drop3"]) == 0.0 and float(row["qbar3"]) == 0.0
        assert float(row["qbar5"]) == 0.0

    def analyze_unstable_exit_2():
        proc = run("analyze", "-c", cfg, "--mu1", "0.9", "--mu2", "0.9", "--mu3", "0.9",
                   "--mu4", "0.9", "--mu5", "0.9", "--mu6", "0.3", expect=2)
        assert "UNSTABLE" in proc.stdout
        assert "lambda6" in proc.stdout

    def config_errors_exit_1():
        bad = os.path.join(tmp, "bad.cfg")
        with open(bad, "w") as f:
            f.write(CONFIG + "bogus = 3\n")
        proc = run("analyze", "-c", bad, expect=1)
        assert "unknown key" in proc.stderr
        missing = os.path.join(tmp, "missing.cfg")
        with open(missing, "w") as f:
            f.write("p = 0.8\n")
        proc = run("analyze", "-c", missing, expect=1)
        assert "missing key" in proc.stderr

    def simulate_deterministic_bytes():
        out1 = os.path.join(tmp, "s1.csv")
        out2 = os.path.join(tmp, "s2.csv")
        run("simulate", "-c", cfg, "--slots", "50000", "--warmup", "1000", "--seed", "9",
            "--out", out1)
        run("simulate", "-c", cfg, "--slots", "50000", "--warmup", "1000", "--seed", "9",
            "--out", out2)
        raw1, header, _ = read_csv(out1)
        raw2, _, _ = read_csv(out2)
        assert raw1 == raw2, "same seed must give identical CSV bytes"
        assert "seed" in header and "rng" in header

    def simulate_runs_schema():
        out = os.path.join(tmp, "s5.csv")
        run("simulate", "-c", cfg, "--slots", "20000", "--warmup", "500", "--runs", "5",
            "--jobs", "2", "--out", out)
        _, header, rows = read_csv(out)
        assert "drop_total_mean" in header and "drop_total_std" in header
        assert len(rows) == 1

    def compare_columns():
        out = os.path.join(tmp, "cmp.csv")
        run("compare", "-c", cfg, "--alphas", "0.3,0.5", "--slots", "100000", "--out", out)
        _, header, rows = read_csv(out)
        for col in ("pd_ana", "pd_sim", "qbar_ana", "qbar_sim", "pd_abs_err", "qbar_rel_err"):
            assert col in header, f"missing column {col}"
        assert len(rows) == 2
        row = dict(zip(header, rows[0]))
        assert abs(float(row["pd_ana"]) - float(row["pd_sim"])) <= 0.01

    def compare_rejects_empty_alphas():
        run("compare", "-c", cfg, expect=1)

    def sweep_csv_and_argmin():
        out = os.path.join(tmp, "sweep.csv")
        run("sweep", "-c", cfg, "--step", "0.1", "--out", out)
        _, header, rows = read_csv(out)
        assert "is_argmin" in header
        assert len(rows) == 11
        argmins = [r for r in rows if r[header.index("is_argmin")] == "1"]
        assert len(argmins) == 1

    def sweep_bad_flags():
        run("sweep", "-c", cfg, "--objective", "latency", expect=1)
        run("sweep", "-c", cfg, "--step", "0", expect=1)

    def sweep_map_mode():
        out = os.path.join(tmp, "map.csv")
        run("sweep", "-c", cfg, "--step", "0.25", "--mu1-list", "0.3,0.5", "--mu2-list",
            "0.4", "--jobs", "2", "--out", out)
        _, header, rows = read_csv(out)
        assert "alpha_opt" in header
        assert len(rows) == 2

    def region_rows():
        out = os.path.join(tmp, "region.csv")
        run("region", "-c", cfg, "--mu-list", "0.3,0.6", "--M-list", "5,50", "--jobs", "2",
            "--out", out)
        _, header, rows = read_csv(out)
        assert len(rows) == 4
        idx_mu = header.index("mu1")
        idx_thr = header.index("throughput")
        by = {(r[idx_mu], r[header.index("M1")]): float(r[idx_thr]) for r in rows}
        assert by[("0.6", "5")] - by[("0.3", "5")] > by[("0.3", "50")] - by[("0.3", "5")]

    def region_requires_lists():
        run("region", "-c", cfg, expect=1)

    def unknown_subcommand():
        run("frobnicate", expect=1)

    check("analyze prints metrics", analyze_ok)
    check("analyze --alpha 1.0 zeroes route 2", analyze_override_route1_only)
    check("unstable config exits 2 with diagnostics", analyze_unstable_exit_2)
    check("config errors exit 1 with field message", config_errors_exit_1)
    check("simulate is byte-deterministic and records rng metadata",
          simulate_deterministic_bytes)
    check("simulate --runs emits mean/std columns", simulate_runs_schema)
    check("compare emits the documented columns", compare_columns)
    check("compare without alphas is a usage error", compare_rejects_empty_alphas)
    check("sweep marks exactly one argmin", sweep_csv_and_argmin)
    check("sweep rejects bad objective and step", sweep_bad_flags)
    check("sweep map mode emits one row per cell", sweep_map_mode)
    check("region emits the grid with throughput ordering", region_rows)
    check("region requires mu and M lists", region_requires_lists)
    check("unknown subcommand is a usage error", unknown_subcommand)

    print(f"{14 - failed}/14 cli tests passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
