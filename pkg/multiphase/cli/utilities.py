"""Shared functions for the `multiphase.cli` package."""

import os
import sys
import logging
from argparse import ArgumentTypeError

from multiphase import common
from multiphase import settings
from multiphase.core import exporter, publisher

log = common.logger(__name__)


class capture(object):  # pylint: disable=R0903
    """Context manager to catch :class:`~multiphase.common.MultiphaseError`.

    The exit code of a caught error is kept in `code` (0 without errors).

    """

    def __init__(self, catch=True):
        self.catch = catch
        self.code = 0

    def __bool__(self):
        return self.code == 0

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        if exc_type and issubclass(exc_type, common.MultiphaseError):
            self.code = exc_value.exit_code
            if self.catch:
                log.error(exc_value)
                return True


def configure_logging(verbosity=0):
    """Configure logging using the provided verbosity level (-1 to 4)."""
    assert common.PRINT_VERBOSITY == 0
    assert common.MAX_VERBOSITY == 4

    # Configure the logging level and format
    if verbosity == -1:
        level = settings.QUIET_LOGGING_LEVEL
        default_format = settings.DEFAULT_LOGGING_FORMAT
        verbose_format = settings.LEVELED_LOGGING_FORMAT
    elif verbosity == 0:
        level = settings.DEFAULT_LOGGING_LEVEL
        default_format = settings.DEFAULT_LOGGING_FORMAT
        verbose_format = settings.LEVELED_LOGGING_FORMAT
    elif verbosity == 1:
        level = settings.VERBOSE_LOGGING_LEVEL
        default_format = settings.DEFAULT_LOGGING_FORMAT
        verbose_format = settings.LEVELED_LOGGING_FORMAT
    elif verbosity == 2:
        level = settings.VERBOSE2_LOGGING_LEVEL
        default_format = verbose_format = settings.VERBOSE_LOGGING_FORMAT
    elif verbosity == 3:
        level = settings.VERBOSE3_LOGGING_LEVEL
        default_format = verbose_format = settings.VERBOSE_LOGGING_FORMAT
    else:
        level = settings.VERBOSE3_LOGGING_LEVEL
        default_format = verbose_format = settings.VERBOSE2_LOGGING_FORMAT

    # Set a custom formatter
    if not logging.root.handlers:  # pragma: no cover (manual test)
        logging.basicConfig(level=level, stream=sys.stderr)
        logging.captureWarnings(True)
        formatter = common.WarningFormatter(default_format, verbose_format)
        logging.root.handlers[0].setFormatter(formatter)

    # Warn about excessive verbosity
    if verbosity > common.MAX_VERBOSITY:
        msg = "maximum verbosity level is {}".format(common.MAX_VERBOSITY)
        logging.warning(msg)
        common.verbosity = common.MAX_VERBOSITY
    else:
        common.verbosity = verbosity


def configure_settings(args):
    """Update settings based on the command-line options."""
    # Parse common settings
    if getattr(args, 'no_cross_check', None) is not None:
        settings.CROSS_CHECK = args.no_cross_check is False
    # Parse `verify` settings
    if getattr(args, 'trials', None) is not None:
        settings.VERIFY_TRIALS = args.trials
    if getattr(args, 'seed', None) is not None:
        settings.VERIFY_SEED = args.seed
    if getattr(args, 'max_degree', None) is not None:
        settings.VERIFY_MAX_DEGREE = args.max_degree
    if getattr(args, 'max_terms', None) is not None:
        settings.VERIFY_MAX_TERMS = args.max_terms
    if getattr(args, 'sizes', None):
        settings.VERIFY_CHART_SIZES = tuple(args.sizes)
    if getattr(args, 'jobs', None) is not None:
        settings.VERIFY_JOBS = args.jobs


def output(obj, args, default='json', **extras):
    """Write a result to a file or standard output.

    :param obj: result to write (chart, field, form, verdict, reports)
    :param args: Namespace of CLI arguments (`out` and `format`)
    :param default: format on standard output when none is given
    :param extras: additional payload entries for documents

    :return: path of the written file, or None

    """
    path = getattr(args, 'out', None)
    fmt = getattr(args, 'format', None)
    if path:
        ext = os.path.splitext(path)[-1]
        if ext == '.txt' or (fmt == 'text' and not ext):
            text = publisher.publish(obj)
            log.info("writing to {}...".format(path))
            return common.write_text(text, path)
        return exporter.export(obj, path, **extras)
    if (fmt or default) == 'text':
        text = publisher.publish(obj)
        for key, value in sorted(extras.items()):
            if value is not None:
                text += "{}:\n{}".format(key.replace('_', ' '),
                                         publisher.publish(value))
    else:
        text = exporter.export(obj, ext='.json', **extras)
    emit(text)
    return None


def emit(text):
    """Write a result to standard output, whatever the verbosity."""
    sys.stdout.write(text)
    sys.stdout.flush()


def show(message, flush=False):
    """Print (optionally flushed) progress text to the display.

    :param message: text to print
    :param flush: indicates the message is progress text

    """
    # show messages when enabled
    if common.verbosity >= common.PRINT_VERBOSITY:
        # unless they are progress messages and logging is enabled
        if common.verbosity == 0 or not flush:
            print(message, file=sys.stderr, flush=flush)


def positive_int(value):
    """Evaluate a value as positive.

    :param value: passed in value to Evaluate

    :return: value casted to an integer

    """
    exc = ArgumentTypeError("'{}' is not a positive int value".format(value))
    try:
        ival = int(value)
    except ValueError:
        raise exc from None
    else:
        if ival < 1:
            raise exc
        return ival


def non_negative_int(value):
    """Evaluate a value as zero or positive."""
    exc = ArgumentTypeError("'{}' is not a non-negative int value".format(
        value))
    try:
        ival = int(value)
    except ValueError:
        raise exc from None
    else:
        if ival < 0:
            raise exc
        return ival


def chart_size(value):
    """Evaluate "n,N" as a pair of positive integers.

    >>> chart_size("2,1")
    (2, 1)

    """
    parts = value.split(',')
    if len(parts) != 2:
        raise ArgumentTypeError("'{}' is not of the form n,N".format(value))
    return tuple(positive_int(part.strip()) for part in parts)
