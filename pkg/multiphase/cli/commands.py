"""Command functions."""

import os

from multiphase import common, settings
from multiphase.common import DocumentError, InvariantBreach, NotInImage
from multiphase.cli import utilities
from multiphase.core.types import (VECTOR_FIELD, FORM, VVFORM, GENERATORS,
                                   InverseFailure)
from multiphase.core import importer, verifier
from multiphase.core import multisymplectic as msy
from multiphase.core import polysymplectic as psy
from multiphase.core.calculus import (exterior_derivative, interior_product,
                                      interior_product_vvf,
                                      vertical_derivative_vvf)

log = common.logger(__name__)

CANONICAL = {'omega': msy.canonical_omega,
             'theta': msy.canonical_theta,
             'omega_hat': psy.canonical_omega_hat,
             'theta_hat': psy.canonical_theta_hat}


def get(name):
    """Get a command function by name."""
    log.debug("running command '{}'...".format(name))
    return globals()['run_' + name]


def _path(cwd, path):
    return os.path.join(cwd, path)


def _load_chart(args, cwd):
    """Get the chart given with `--chart`, if any."""
    if not getattr(args, 'chart', None):
        return None
    return importer.import_file(_path(cwd, args.chart)).value


def _load(args, cwd, path, *kinds):
    """Read a document of one of the given kinds."""
    chart = _load_chart(args, cwd)
    envelope = importer.import_file(_path(cwd, path), chart=chart)
    if envelope.kind not in kinds:
        msg = "expected a {} document, got {}".format(' or '.join(kinds),
                                                      envelope.kind)
        raise DocumentError(msg, location=path)
    return envelope


def run_classify(args, cwd, _, catch=True):
    """Process arguments and run the `multiphase classify` subcommand.

    :param args: Namespace of CLI arguments
    :param cwd: current working directory
    :param error: function to call for CLI errors
    :param catch: catch and log :class:`~multiphase.common.MultiphaseError`

    :return: exit code

    """
    with utilities.capture(catch=catch) as result:

        field = _load(args, cwd, args.field, VECTOR_FIELD).value

        if field.chart.extended:
            verdict = msy.classify(field)
        else:
            verdict = psy.classify_vertical(field)
        utilities.show("classified as {}".format(verdict.status), flush=True)

        utilities.output(verdict, args)

    return result.code


def run_construct(args, cwd, _, catch=True):
    """Process arguments and run the `multiphase construct` subcommand.

    :param args: Namespace of CLI arguments
    :param cwd: current working directory
    :param error: function to call for CLI errors
    :param catch: catch and log :class:`~multiphase.common.MultiphaseError`

    :return: exit code

    """
    with utilities.capture(catch=catch) as result:

        generators = _load(args, cwd, args.data, GENERATORS).value
        chart = generators.chart

        if chart.extended:
            field = msy.construct_hamiltonian_vf(generators)
            closure = exterior_derivative(
                interior_product(field, msy.canonical_omega(chart)))
            form = msy.hamiltonian_form_of(field, generators)
        else:
            field = psy.construct_polyhamiltonian_vf(generators)
            closure = vertical_derivative_vvf(
                interior_product_vvf(field, psy.canonical_omega_hat(chart)))
            form = psy.hamiltonian_section_of(field, generators)
        if closure:
            raise InvariantBreach("constructed field is not hamiltonian: "
                                  "{}".format(closure))

        utilities.output(field, args, hamiltonian_form=form)

    return result.code


def run_solve(args, cwd, _, catch=True):
    """Process arguments and run the `multiphase solve` subcommand.

    :param args: Namespace of CLI arguments
    :param cwd: current working directory
    :param error: function to call for CLI errors
    :param catch: catch and log :class:`~multiphase.common.MultiphaseError`

    :return: exit code

    """
    with utilities.capture(catch=catch) as result:

        form = _load(args, cwd, args.form, FORM, VVFORM).value

        try:
            if form.chart.extended:
                field = msy.solve_hamiltonian(form)
            else:
                field = psy.solve_polyhamiltonian(form)
        except NotInImage as exc:
            utilities.output(InverseFailure(form.chart, str(exc),
                                            exc.witness), args)
            raise

        utilities.output(field, args)

    return result.code


def run_verify(args, cwd, _, catch=True):  # pylint: disable=W0613
    """Process arguments and run the `multiphase verify` subcommand.

    :param args: Namespace of CLI arguments
    :param cwd: current working directory
    :param error: function to call for CLI errors
    :param catch: catch and log :class:`~multiphase.common.MultiphaseError`

    :return: exit code

    """
    with utilities.capture(catch=catch) as result:

        reports = verifier.verify(suite=args.suite,
                                  trials=settings.VERIFY_TRIALS,
                                  seed=settings.VERIFY_SEED,
                                  max_degree=settings.VERIFY_MAX_DEGREE,
                                  max_terms=settings.VERIFY_MAX_TERMS,
                                  sizes=settings.VERIFY_CHART_SIZES,
                                  jobs=settings.VERIFY_JOBS)

        utilities.output(reports, args, default='text')

    if result and not all(report.ok for report in reports):
        log.error("verification failed")
        return 1
    return result.code


def run_show(args, cwd, error, catch=True):
    """Process arguments and run the `multiphase show` subcommand.

    :param args: Namespace of CLI arguments
    :param cwd: current working directory
    :param error: function to call for CLI errors
    :param catch: catch and log :class:`~multiphase.common.MultiphaseError`

    :return: exit code

    """
    if not args.chart:
        error("the chart is required: --chart PATH")

    with utilities.capture(catch=catch) as result:

        chart = _load_chart(args, cwd)
        form = CANONICAL[args.name](chart)

        utilities.output(form, args, default='text')

    return result.code
