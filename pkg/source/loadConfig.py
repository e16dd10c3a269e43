##############################################################################
#Version: 2.0
#Package: xxzgeom
#
#Description: Run configuration
#             Reads the line based "key = value" file and layers
#             defaults <- file <- command line flags into a SweepSpec
##############################################################################

import numpy as np

import milburnDynamics as md
import sweep2csv
import xxzModel
from xxzErrors import UsageError

DEFAULTS = dict(J=0.3, gamma=0.0, B=0.0, alpha=0.1, alphas=None,
                eta_max=2 * np.pi, n_points=None, method='analytic',
                convention='paper', seed=1234, quantities='all')


def _float(text, lineNo):
    try:
        value = float(text)
    except ValueError:
        raise UsageError('line %d: malformed number %r' % (lineNo, text))
    if not np.isfinite(value):
        raise UsageError('line %d: number must be finite, got %r'
                         % (lineNo, text))
    return value


def _int(text, lineNo):
    try:
        return int(text)
    except ValueError:
        raise UsageError('line %d: malformed integer %r' % (lineNo, text))


def _floatList(text, lineNo):
    items = [t.strip() for t in text.split(',') if t.strip()]
    if not items:
        raise UsageError('line %d: empty list' % lineNo)
    return tuple(_float(t, lineNo) for t in items)


def _text(text, lineNo):
    return text


PARSERS = dict(J=_float, gamma=_float, B=_float, alpha=_float,
               alphas=_floatList, eta_max=_float, n_points=_int,
               method=_text, convention=_text, seed=_int, quantities=_text)


def parseConfig(lines):
    '''Typed values from "key = value" lines; '#' starts a comment'''
    values = {}
    for lineNo, line in enumerate(lines, 1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise UsageError('line %d: expected "key = value", got %r'
                             % (lineNo, line))
        key, text = [part.strip() for part in line.split('=', 1)]
        if key not in PARSERS:
            raise UsageError('line %d: unknown config key %r'
                             % (lineNo, key))
        values[key] = PARSERS[key](text, lineNo)
    return values


def readConfig(path):
    try:
        with open(path, encoding='utf-8') as src:
            return parseConfig(src.read().splitlines())
    except OSError as err:
        raise UsageError('cannot read config %s: %s' % (path, err))


def loadConfig(path=None, overrides=None,
               nPointsDefault=sweep2csv.SCAN_POINTS):
    '''SweepSpec from defaults, then the file at path, then every
       non-None entry of overrides (same keys as the file)'''
    values = dict(DEFAULTS)
    if path:
        values.update(readConfig(path))
    for key, value in (overrides or {}).items():
        if key not in PARSERS:
            raise UsageError('unknown config key %r' % key)
        if value is not None:
            values[key] = value
    if values['n_points'] is None:
        values['n_points'] = nPointsDefault
    params = xxzModel.ModelParams(values['J'], anisotropy=values['gamma'],
                                  field=values['B'], alpha=values['alpha'],
                                  convention=values['convention'])
    alphas = values['alphas'] or (params.alpha,)
    return sweep2csv.SweepSpec(params, alphas=tuple(alphas),
                               etaMax=values['eta_max'],
                               nPoints=values['n_points'],
                               quantities=values['quantities'],
                               method=md.Method.parse(values['method']),
                               seed=values['seed'])
