"""Logging setup for the command-line driver and test campaigns."""
import logging
from typing import Optional

FILE_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


def setup_logging(level: str = 'WARNING', log_file: Optional[str] = None) -> None:
    """Configure the root logger.

    Console output goes to stderr so stdout only ever carries results.
    A log file, when given, gets the full timestamped format.
    """
    console_handler = logging.StreamHandler()
    console_handler.setLevel(getattr(logging, level.upper(), logging.WARNING))
    console_handler.setFormatter(logging.Formatter('%(message)s'))
    handlers = [console_handler]

    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(FILE_FORMAT))
        handlers.append(file_handler)

    logging.basicConfig(level=logging.DEBUG if log_file else console_handler.level,
                        handlers=handlers, force=True)
