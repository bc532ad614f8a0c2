import os
import re
import sys
from typing import TextIO

# tqdm redraws the same bar many times; only the last one is worth keeping
PROGRESS_PATTERN = re.compile(r"\d+%\|.*\|")


def log(tag: str, message: str) -> None:
    """Write one tagged diagnostic line to stderr, e.g. ``[SOLVER] converged``."""
    print(f"[{tag}] {message}", file=sys.stderr, flush=True)


class Logger:
    """Tee for the diagnostic stream: everything written goes to the terminal and a log file."""

    def __init__(self, filename: str, terminal: TextIO | None = None):
        self.filename = os.path.join(os.getcwd(), filename)
        self.terminal = terminal or sys.stderr
        self.reset_logs()
        self.log = open(self.filename, "a", encoding="utf-8")

    def write(self, message):
        self.terminal.write(message)
        self.log.write(message)

    def flush(self):
        self.terminal.flush()
        self.log.flush()

    def isatty(self):
        return False

    def close(self):
        self.log.close()

    def reset_logs(self):
        with open(self.filename, "w", encoding="utf-8") as file:
            file.truncate(0)

    def read_logs(self, max_lines: int = 300) -> str:
        self.flush()

        with open(self.filename, "r", encoding="utf-8") as f:
            # tqdm separates redraws with carriage returns
            log_content = [line for chunk in f.read().split("\r") for line in chunk.splitlines(keepends=True)]

        log_content = [line for line in log_content if "\x00" not in line and line.strip()]

        progress_lines = [line for line in log_content if PROGRESS_PATTERN.search(line)]
        if progress_lines:
            valid_content = [line for line in log_content if line not in progress_lines]
            valid_content.append(progress_lines[-1].rstrip("\n") + "\n")
        else:
            valid_content = log_content

        return "".join(valid_content[-max_lines:])
