"""
Every analysis on the shipped fixtures
======================================

Writes the complete output tree and its manifest to a scratch directory.
"""

import json
import tempfile
from pathlib import Path

from ordolex.experiments import ExperimentConfig, run_all
from ordolex.synthetic import write_fixtures

root = Path(tempfile.mkdtemp(prefix="ordolex-demo-"))
fx = write_fixtures(root / "fixtures")
cfg = ExperimentConfig(fx / "corpora", fx / "languages.csv", output_dir=root / "out",
                       condition_languages=fx / "dunn_languages.txt")
summary = run_all(cfg)

print((cfg.output_dir / "summary.txt").read_text(encoding="utf-8"))
manifest = json.loads(summary.manifest.read_text(encoding="utf-8"))
print("skipped:", manifest["counts"]["skipped_conditions"])
for name in manifest["outputs"]:
    print(name)
