"""Run the fcc command from a source checkout: ``python run.py cc samples/adder.fsrc``."""
import sys

from src.main import main

if __name__ == '__main__':
    sys.exit(main())
