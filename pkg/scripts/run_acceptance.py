"""Run the acceptance suite and print one PASS/FAIL line per criterion."""
import argparse
import subprocess
import sys
from dataclasses import dataclass
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


@dataclass
class AcceptanceConfig:
    only: str = ""  # pytest -k expression, e.g. "criterion5"
    log: Path | None = None


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-k", "--only", default="")
    ap.add_argument("--log", type=Path)
    args = ap.parse_args(argv)
    config = AcceptanceConfig(args.only, args.log)
    cmd = [sys.executable, "-m", "pytest", "-s", "-q", str(ROOT / "tests" / "test_acceptance.py")]
    if config.only:
        cmd += ["-k", config.only]
    proc = subprocess.run(cmd, cwd=ROOT, capture_output=True, text=True, check=False)
    lines = [l for l in proc.stdout.splitlines() if l.startswith(("PASS ", "FAIL "))]
    print("\n".join(lines))
    if config.log:
        config.log.write_text(proc.stdout + proc.stderr)
    return proc.returncode


if __name__ == "__main__":
    sys.exit(main())
