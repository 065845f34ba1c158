# Copyright 2026 The slashsim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Exit codes of the slash binary: 0 ok, 1 usage, 2 scenario, 3 physics."""

import os
import subprocess
import sys
import tempfile

BROKEN_YAML = """name: broken
paths:
  - name: left
    photon: 0
    elements:
      - source: epr
      - polarizer: 30 furlongs
      - detector: left
  - name: right
    photon: 1
    elements: []
choice:
  path: right
  out: [{detector: right}]
  in: [{nl: {population: 1, model: ansatz}}]
"""


def main() -> int:
    slash, scenario_dir = sys.argv[1], sys.argv[2]
    with tempfile.TemporaryDirectory() as tmp:
        broken = os.path.join(tmp, "broken.yaml")
        with open(broken, "w") as f:
            f.write(BROKEN_YAML)
        out_file = os.path.join(tmp, "out.csv")
        cases = [
            (["run", "fig1"], 0, None),
            (["run", "fig2", "--model", "cptp", "--p-noise", "0.5"], 0, None),
            (["run", os.path.join(scenario_dir, "fig3.yaml"), "--theta", "0:90deg:5"], 0, None),
            (["run", "fig1", "-o", out_file], 0, None),
            (["sweep", "fig1", "--axis", "p_noise", "--from", "0", "--to", "1", "--steps", "5", "--model", "cptp"], 0, None),
            (["audit", "--fuzz", "5", "--ansatz"], 0, None),
            (["scenarios", "list"], 0, None),
            (["--version"], 0, None),
            ([], 1, None),
            (["run"], 1, None),
            (["run", "fig1", "--trials", "0"], 1, None),
            (["run", "fig1", "--efficiency", "1.5", "--trials", "10"], 1, None),
            (["sweep", "fig1", "--axis", "n", "--from", "3", "--to", "1", "--steps", "4"], 1, None),
            (["frobnicate"], 1, None),
            (["run", "fig9"], 2, "built-ins are: fig1, fig2, fig3"),
            (["run", broken], 2, "broken.yaml:7:"),
            (["run", os.path.join(tmp, "absent.yaml")], 2, "cannot open"),
        ]
        failures = 0
        for args, want, needle in cases:
            proc = subprocess.run([slash, *args], capture_output=True, text=True)
            ok = proc.returncode == want and (needle is None or needle in proc.stderr)
            status = "ok " if ok else "BAD"
            print(f"{status} exit={proc.returncode} want={want} slash {' '.join(args)}")
            if not ok:
                failures += 1
                print(proc.stderr.strip())
        if not os.path.getsize(out_file):
            print("BAD -o produced an empty file")
            failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
