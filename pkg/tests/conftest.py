import sys
from pathlib import Path

# Make sibling helper modules (oracles.py) importable from every test file.
sys.path.insert(0, str(Path(__file__).parent))
