#!/usr/bin/env python
##############################################################################
#Version: 2.0
#Package: xxzgeom
#
#Description: Command line front end
#             xxzgeom <spectrum|evolve|scan|brachistochrone|geomphase|verify|
#                      figures> [flags]
##############################################################################

import os
import sys
sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)),
                                'source'))
import argparse
import time

import brachistochrone as bc
import entanglement
import milburnDynamics as md
import sweep2csv
import verifyReport
import xxzModel
from loadConfig import loadConfig
from xxzErrors import UsageError, XXZGeomError

TIMER = 1

startTime_for_tictoc = None


def tic():
    global startTime_for_tictoc
    startTime_for_tictoc = time.time()


def toc():
    if startTime_for_tictoc is not None:
        say("Elapsed time is " + str(time.time() - startTime_for_tictoc)
            + " seconds.")
    else:
        say("Toc: start time not set")


def say(message):
    '''Progress goes to stderr; stdout carries results only'''
    print(message, file=sys.stderr)


def floatList(text):
    try:
        values = tuple(float(t) for t in text.split(',') if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError('expected a comma separated list '
                                         'of numbers, got %r' % text)
    if not values:
        raise argparse.ArgumentTypeError('empty list')
    return values


def buildParser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--J', help='Coupling J', type=float, default=None)
    common.add_argument('--gamma', help='Anisotropy gamma', type=float,
                        default=None)
    common.add_argument('--B', help='Longitudinal field B', type=float,
                        default=None)
    common.add_argument('--alpha', help='Intrinsic decoherence rate',
                        type=float, default=None)
    common.add_argument('--alphas', help='Comma separated decoherence rates',
                        type=floatList, default=None)
    common.add_argument('--eta-max', help='End of the eta grid', type=float,
                        default=None)
    common.add_argument('--steps', help='Number of grid points', type=int,
                        default=None)
    common.add_argument('--method', help='analytic | closed | rk4',
                        type=str, default=None)
    common.add_argument('--convention', help='paper | literal', type=str,
                        default=None)
    common.add_argument('--quantities',
                        help='Comma list over C,LHS,VHS,F,LB,VB,PHI',
                        type=str, default=None)
    common.add_argument('--seed', help='Seed of the separable sampler',
                        type=int, default=None)
    common.add_argument('--config', help='key = value configuration file',
                        type=str, default=None)

    parser = argparse.ArgumentParser(
        prog='xxzgeom',
        description='Intrinsic decoherence, entanglement and state geometry '
                    'of the two-spin XXZ model')
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    commands.add_parser('spectrum', parents=[common],
                        help='Energies of the Hamiltonian')
    evolve = commands.add_parser('evolve', parents=[common],
                                 help='Density matrix along eta')
    evolve.add_argument('--out', help='CSV output file', type=str,
                        default='')
    scan = commands.add_parser('scan', parents=[common],
                               help='Geometry quantities versus eta')
    scan.add_argument('--out', help='CSV output file', type=str,
                      default='scan.csv')
    commands.add_parser('brachistochrone', parents=[common],
                        help='Minimal evolution time')
    phase = commands.add_parser('geomphase', parents=[common],
                                help='Geometric phase versus eta')
    phase.add_argument('--out', help='CSV output file', type=str,
                       default='geomphase.csv')
    phase.add_argument('--closed-form',
                       help='Add the printed closed-form phase',
                       action='store_true')
    verify = commands.add_parser('verify', parents=[common],
                                 help='Run the oracle suite, '
                                      '--tol-<check> overrides a tolerance')
    verify.add_argument('--report', help='XML report file', type=str,
                        default='')
    figures = commands.add_parser('figures', parents=[common],
                                  help='CSV data of every figure panel')
    figures.add_argument('--out-dir', help='Output directory', type=str,
                         default='figures')
    return parser


def splitTolerances(parser, extra):
    '''(name, value) pairs from leftover --tol-<check> [=] value flags'''
    pairs = []
    k = 0
    while k < len(extra):
        flag = extra[k]
        if not flag.startswith('--tol-'):
            parser.error('unrecognized arguments: %s' % ' '.join(extra[k:]))
        name, sep, value = flag[len('--tol-'):].partition('=')
        if not sep:
            if k + 1 >= len(extra):
                parser.error('%s expects a value' % flag)
            k += 1
            value = extra[k]
        pairs.append((name, value))
        k += 1
    return pairs


def overridesFrom(args):
    return dict(J=args.J, gamma=args.gamma, B=args.B, alpha=args.alpha,
                alphas=args.alphas, eta_max=args.eta_max,
                n_points=args.steps, method=args.method,
                convention=args.convention, seed=args.seed,
                quantities=args.quantities)


def fmt(value):
    return sweep2csv.formatValue(value)


def cfmt(value):
    '''Real entries print as reals, complex ones as a+bj'''
    value = complex(value)
    if value.imag == 0:
        return fmt(value.real)
    return '%s%+.12gj' % (fmt(value.real), value.imag)


def runSpectrum(spec, args):
    spectrum = xxzModel.spectrum(spec.paramsBase)
    for k, energy in enumerate(spectrum.energies, 1):
        print('E%d %s' % (k, fmt(energy)))
    for k in range(len(spectrum.energies)):
        amplitudes = ' '.join(cfmt(a) for a in spectrum.states[:, k])
        print('psi%d %s' % (k + 1, amplitudes))


def runEvolve(spec, args):
    p = spec.paramsBase
    if args.out:
        rows = sweep2csv.evolveRows(p, spec.etaMax, spec.nPoints,
                                    spec.method)
        sweep2csv.writeCsv(args.out, sweep2csv.EVOLVE_HEADER, rows)
        say("Wrote " + args.out)
        return
    traj = md.makeTrajectory(p, spec.etaMax, spec.nPoints, spec.method)
    state = traj.state(len(traj) - 1)
    print('eta %s' % fmt(traj.etas[-1]))
    print('u22 %s' % fmt(state.u22))
    print('u33 %s' % fmt(state.u33))
    print('u23 %s' % cfmt(state.u23))
    print('purity %s' % fmt(md.purity(state)))
    print('C %s' % fmt(entanglement.concurrenceWootters(state).value))


def runScan(spec, args):
    sweep2csv.writeCsv(args.out, sweep2csv.SCAN_HEADER,
                       sweep2csv.runScan(spec))
    say("Wrote " + args.out)


def runBrachistochrone(spec, args):
    result = bc.solveBrachistochrone(spec.paramsBase)
    state = result.optimalState
    print('v_hs_max %s' % fmt(result.vHsMax))
    print('l_hs_at_c1 %s' % fmt(result.lHsAtC1))
    print('t_min %s' % fmt(result.tMin))
    print('eta_at_t_min %s' % fmt(result.etaAtTMin))
    for k, row in enumerate(state.mat, 1):
        print('optimal_row%d %s' % (k, ' '.join(cfmt(a) for a in row)))
    print('residual %s' % fmt(result.milburnResidual))


def runGeomPhase(spec, args):
    rows = []
    for alpha in spec.alphas:
        rows.extend(sweep2csv.geomPhaseRows(
            spec.paramsFor(alpha), spec.etaMax, spec.nPoints,
            args.closed_form, spec.method))
    sweep2csv.writeCsv(args.out, sweep2csv.phaseHeader(args.closed_form),
                       rows)
    say("Wrote " + args.out)


def runVerify(spec, args, tolerances):
    report = verifyReport.runVerification(
        tolerances, spec.paramsBase.convention, spec.seed,
        progress=lambda group: say("Checking " + group + " ..."))
    print(report.summary())
    if args.report:
        report.writeToFile(args.report)
        say("Wrote " + args.report)
    return 0 if report.exitOk else 1


def runFigures(spec, args):
    sweep2csv.writeFigures(args.out_dir,
                           progress=lambda path: say("Wrote " + path))


RUNNERS = dict(spectrum=runSpectrum, evolve=runEvolve, scan=runScan,
               brachistochrone=runBrachistochrone, geomphase=runGeomPhase,
               figures=runFigures)


def main(argv=None):
    parser = buildParser()
    args, extra = parser.parse_known_args(argv)
    pairs = splitTolerances(parser, extra)
    if pairs and args.command != 'verify':
        parser.error('--tol-<check> flags only apply to verify')
    if args.command == 'spectrum' and args.J is None:
        parser.error('spectrum needs --J')
    try:
        tolerances = verifyReport.parseTolerances(pairs)
        nPoints = (sweep2csv.PHASE_POINTS if args.command == 'geomphase'
                   else sweep2csv.SCAN_POINTS)
        spec = loadConfig(args.config, overridesFrom(args), nPoints)
        if TIMER:
            tic()
        say("Running " + args.command + " ...")
        if args.command == 'verify':
            status = runVerify(spec, args, tolerances)
        else:
            RUNNERS[args.command](spec, args)
            status = 0
        if TIMER:
            toc()
        return status
    except XXZGeomError as err:
        say('xxzgeom: error: %s' % err)
        if isinstance(err, UsageError):
            parser.print_usage(sys.stderr)
        return err.exitCode


if __name__ == '__main__':
    sys.exit(main())
