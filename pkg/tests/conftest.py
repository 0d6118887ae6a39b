import sys
from pathlib import Path

# Tests import the brute-force oracles in tests/naive.py as a plain module.
sys.path.insert(0, str(Path(__file__).parent))
