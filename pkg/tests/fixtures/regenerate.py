"""Rewrite the expected CLI outputs.  Run only after an intended output change."""

import json
import subprocess
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent


def argv_for(args):
    return [a.replace("@", str(HERE) + "/") for a in args]


def run_case(args, env=None):
    cmd = [sys.executable, "-m", "toruslat", *argv_for(args), "--no-cache"]
    return subprocess.run(cmd, capture_output=True, text=True, env=env)


def main():
    cases = json.loads((HERE / "cli_cases.json").read_text())
    for name, args in cases.items():
        proc = run_case(args)
        if proc.returncode != 0:
            sys.exit(f"{name}: exit {proc.returncode}\n{proc.stderr}")
        (HERE / "expected" / f"{name}.json").write_text(proc.stdout)
        print(name, len(proc.stdout))


if __name__ == "__main__":
    main()
