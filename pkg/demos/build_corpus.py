"""Regenerate the shipped corpus under src/loopkit/data/corpus.

The order-8 CC search takes about a minute on one core.
"""

import sys
from pathlib import Path

from loopkit.corpus import build_corpus

target = Path(__file__).resolve().parent.parent / "src" / "loopkit" / "data" / "corpus"
jobs = int(sys.argv[1]) if len(sys.argv) > 1 else 1
for name in build_corpus(target, jobs=jobs):
    print(target / name)
