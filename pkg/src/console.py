"""
Console output helpers
Everything goes to stderr so stdout only ever carries the report
"""

import sys
from termcolor import cprint

import config


def say(message, color="white", on_color=None, attrs=None):
    """Print a coloured status line when verbose output is on"""
    if not config.VERBOSE:
        return
    cprint(message, color, on_color, attrs=attrs, file=sys.stderr)


def rule(color="cyan", width=80, char="="):
    say(char * width, color)


def header(title, color="cyan", width=80):
    """Section banner framed by two rules"""
    rule(color, width)
    say(title, color, attrs=["bold"])
    rule(color, width)


def fail(message):
    # Failures are always shown, quiet mode or not
    cprint(message, "red", file=sys.stderr)
