##############################################################################
#Version: 2.0
#Package: xxzgeom
#
#Description: Parameter sweeps and CSV emission
#             Builds the rows behind every figure panel (eta scans over a
#             list of alphas, fixed-eta sweeps over alpha or C, geometric
#             phase profiles) and writes them with 12 significant digits.
#             Sweep cells run on a thread pool; rows keep grid order.
##############################################################################

import csv
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

import entanglement
import geometricPhase as gp
import milburnDynamics as md
import stateGeometry as sg
import xxzModel
from xxzErrors import DomainError, OutputError, UsageError

QUANTITIES = ('C', 'LHS', 'VHS', 'F', 'LB', 'VB', 'PHI')
SCAN_HEADER = ['eta', 'alpha', 'J', 'gamma', 'B', 'C', 'L_HS', 'V_HS',
               'F_sep', 'L_B', 'V_B', 'Phi_g']
PHASE_HEADER = ['eta', 'Phi_g_tong', 'Phi_g_closed_form', 'delta', 'converged',
                'alpha']
EVOLVE_HEADER = ['eta', 't', 'u22', 'u33', 're_u23', 'im_u23', 'purity',
                 'C']
COLUMN = dict(C='C', LHS='L_HS', VHS='V_HS', F='F_sep', LB='L_B', VB='V_B',
              PHI='Phi_g')
SCAN_POINTS = 2001
PHASE_POINTS = 4001
SWEEP_POINTS = 1001
DEFAULT_THREADS = 4


def phaseHeader(closedForm=False):
    if closedForm:
        return list(PHASE_HEADER)
    return [c for c in PHASE_HEADER
            if c not in ('Phi_g_closed_form', 'delta')]


def parseQuantities(text):
    '''Comma list over QUANTITIES ("all" selects every one)'''
    if isinstance(text, (set, frozenset, tuple, list)):
        names = [str(q).strip() for q in text]
    else:
        names = [q.strip() for q in str(text).split(',') if q.strip()]
    if names == ['all']:
        return frozenset(QUANTITIES)
    names = [q.upper() for q in names]
    unknown = sorted(set(names) - set(QUANTITIES))
    if unknown or not names:
        raise UsageError('unknown quantities %s (choose from %s)'
                         % (','.join(unknown) or '<empty>',
                            ','.join(QUANTITIES)))
    return frozenset(names)


@dataclass
class SweepSpec:
    paramsBase: xxzModel.ModelParams
    alphas: tuple = ()
    etaMax: float = 2 * np.pi
    nPoints: int = SCAN_POINTS
    quantities: frozenset = field(default_factory=lambda:
                                  frozenset(QUANTITIES))
    method: md.Method = md.Method.ANALYTIC
    seed: int = 1234

    def __post_init__(self):
        if not self.alphas:
            self.alphas = (self.paramsBase.alpha,)
        self.alphas = tuple(float(a) for a in self.alphas)
        if any(a < 0 for a in self.alphas):
            raise DomainError('alphas must be >= 0: %s' % (self.alphas,))
        if int(self.nPoints) < 2:
            raise DomainError('n_points must be >= 2, got %s' % self.nPoints)
        self.nPoints = int(self.nPoints)
        if not self.etaMax > 0:
            raise DomainError('eta_max must be > 0, got %g' % self.etaMax)
        self.quantities = parseQuantities(self.quantities)
        self.method = md.Method.parse(self.method)

    def paramsFor(self, alpha):
        return self.paramsBase.replace(alpha=alpha)


def formatValue(value):
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    return '%.12g' % (float(value) + 0.0)


def workerCount():
    '''Thread pool size, capped by XXZGEOM_THREADS when set'''
    text = os.environ.get('XXZGEOM_THREADS')
    if text is None or text.strip() == '':
        return min(DEFAULT_THREADS, os.cpu_count() or 1)
    try:
        count = int(text)
    except ValueError:
        count = 0
    if count < 1:
        raise UsageError('XXZGEOM_THREADS must be a positive integer, got %r'
                         % text)
    return count


def mapCells(func, cells):
    '''Ordered parallel map over independent sweep cells'''
    cells = list(cells)
    if len(cells) < 2:
        return [func(c) for c in cells]
    with ThreadPoolExecutor(max_workers=workerCount()) as pool:
        return list(pool.map(func, cells))


def _paramColumns(p, eta):
    return [eta, p.alpha, p.coupling, p.anisotropy, p.field]


def _fromConcurrence(c, quantities):
    '''F_sep, L_B, V_B for a measured concurrence'''
    c = np.clip(c, 0.0, 1.0)
    return dict(F=sg.fidelityOfSeparability(c) if 'F' in quantities else None,
                LB=sg.buresDistanceNormalized(c)
                if 'LB' in quantities else None,
                VB=sg.buresSpeed(c) if 'VB' in quantities else None)


def _row(p, eta, quantities, values):
    row = _paramColumns(p, eta)
    for q in QUANTITIES:
        row.append(values.get(q) if q in quantities else None)
    return row


def scanCell(spec, alpha):
    '''Rows for one alpha of an eta scan'''
    p = spec.paramsFor(alpha)
    q = spec.quantities
    traj = md.makeTrajectory(p, spec.etaMax, spec.nPoints, spec.method)
    etas = traj.etas
    cols = {}
    if q & {'C', 'F', 'LB', 'VB'}:
        conc = entanglement.concurrenceSeries(traj.mats)
        cols['C'] = conc
        cols.update(_fromConcurrence(conc, q))
    if 'LHS' in q:
        cols['LHS'] = sg.hsRateClosedForm(p, etas)
    if 'VHS' in q:
        cols['VHS'] = sg.hsSpeed(p, etas)
    if 'PHI' in q:
        cols['PHI'], _ = gp.phaseProfile(traj)
    rows = []
    for k, eta in enumerate(etas):
        values = dict((name, None if col is None else col[k])
                      for name, col in cols.items())
        rows.append(_row(p, eta, q, values))
    return rows


def runScan(spec):
    '''All scan rows, alpha-major then eta, in grid order'''
    cells = mapCells(lambda a: scanCell(spec, a), spec.alphas)
    return [row for cell in cells for row in cell]


def alphaSweepRows(paramsBase, eta, alphas, quantities):
    '''Fixed-eta rows versus alpha, quantities measured on the propagated
       state'''
    quantities = parseQuantities(quantities)

    def cell(alpha):
        p = paramsBase.replace(alpha=alpha)
        s = sg.geometrySample(p, eta)
        values = dict(C=s.concurrence, LHS=s.hsRate, VHS=s.hsSpeed,
                      F=s.fidelitySep, LB=s.buresDistance, VB=s.buresSpeed)
        return _row(p, eta, quantities - {'PHI'}, values)

    return mapCells(cell, alphas)


def concurrenceSweepRows(p, eta, concurrences, quantities):
    '''Fixed-eta rows versus C using the concurrence forms'''
    quantities = parseQuantities(quantities)
    rows = []
    for c in concurrences:
        values = dict(C=c)
        if 'LHS' in quantities:
            values['LHS'] = sg.hsRateFromConcurrence(p, c, eta)
        if 'VHS' in quantities:
            values['VHS'] = sg.hsSpeedFromConcurrence(p, c, eta)
        values.update(_fromConcurrence(c, quantities))
        rows.append(_row(p, eta, (quantities | {'C'}) - {'PHI'}, values))
    return rows


def geomPhaseRows(p, etaMax, nPoints=PHASE_POINTS, closedForm=False,
                  method=md.Method.ANALYTIC):
    '''Phase profile rows: eta, Tong phase, printed closed form and their
       wrapped difference (only with closedForm), the grid-refinement flag
       and alpha'''
    traj = md.makeTrajectory(p, etaMax, nPoints, method)
    phases, converged = gp.phaseProfile(traj)
    rows = []
    for eta, phase, ok in zip(traj.etas, phases, converged):
        row = [eta, phase]
        if closedForm:
            closed = gp.paperClosedFormPhase(p, eta)
            delta = None
            if phase is not None:
                delta = gp.wrapPhase(closed - phase)
            row += [closed, delta]
        rows.append(row + [ok, p.alpha])
    return rows


def evolveRows(p, etaMax, nPoints, method=md.Method.ANALYTIC):
    traj = md.makeTrajectory(p, etaMax, nPoints, method)
    conc = entanglement.concurrenceSeries(traj.mats)
    rows = []
    for k, (eta, t) in enumerate(zip(traj.etas, traj.times)):
        mat = traj.mats[k]
        rows.append([eta, t, mat[1, 1].real, mat[2, 2].real, mat[1, 2].real,
                     mat[1, 2].imag, md.purity(mat), conc[k]])
    return rows


def writeCsv(path, header, rows):
    '''Write header and rows; '.' decimals, '\\n' line endings'''
    try:
        with open(path, 'w', newline='', encoding='utf-8') as out:
            writer = csv.writer(out, lineterminator='\n')
            writer.writerow(header)
            for row in rows:
                writer.writerow([formatValue(v) for v in row])
    except OSError as err:
        raise OutputError('cannot write %s: %s' % (path, err))


def readCsv(path):
    '''Header and rows of a CSV written by writeCsv, fields as strings'''
    with open(path, newline='', encoding='utf-8') as src:
        reader = csv.reader(src)
        header = next(reader)
        return header, [row for row in reader]


def figurePanels(nPoints=SCAN_POINTS, phasePoints=PHASE_POINTS,
                 sweepPoints=SWEEP_POINTS):
    '''(file name, header, row builder) for every figure panel'''
    twoPi = 2 * np.pi
    cs = np.linspace(0.0, 1.0, sweepPoints)
    alphaGrid = np.linspace(0.0, 1.0, sweepPoints)
    P = xxzModel.ModelParams

    def scan(J, alphas, quantities):
        spec = SweepSpec(P(J), alphas=alphas, etaMax=twoPi, nPoints=nPoints,
                         quantities=quantities)
        return lambda: runScan(spec)

    def phases():
        cells = mapCells(lambda a: geomPhaseRows(P(0.09, alpha=a), twoPi,
                                                 phasePoints, True),
                         (0.0, 0.01, 0.06, 0.1))
        return [row for cell in cells for row in cell]

    return [
        ('fig3.csv', SCAN_HEADER,
         scan(0.3, (0.0, 0.01, 0.03, 0.06, 0.1), 'C')),
        ('fig4a.csv', SCAN_HEADER,
         lambda: concurrenceSweepRows(P(0.3, alpha=0.08), np.pi / 6, cs,
                                      'C,LHS')),
        ('fig4b.csv', SCAN_HEADER,
         lambda: alphaSweepRows(P(0.3), 1.5, alphaGrid, 'C,LHS')),
        ('fig6a.csv', SCAN_HEADER,
         lambda: concurrenceSweepRows(P(0.8, alpha=0.1), 1.0, cs, 'C,F')),
        ('fig6b.csv', SCAN_HEADER,
         lambda: alphaSweepRows(P(0.8), 1.0, alphaGrid, 'C,F')),
        ('fig7a.csv', SCAN_HEADER,
         lambda: concurrenceSweepRows(P(0.8, alpha=0.1), 16.0, cs, 'C,LB')),
        ('fig7b.csv', SCAN_HEADER,
         lambda: alphaSweepRows(P(0.8), 16.0, alphaGrid, 'C,LB')),
        ('fig8a.csv', SCAN_HEADER, scan(0.5, (0.01, 0.05, 0.1), 'C,VHS')),
        ('fig8b.csv', SCAN_HEADER, scan(0.5, (0.01, 0.05, 0.1), 'C,VB')),
        ('fig8-speeds.csv', SCAN_HEADER,
         lambda: concurrenceSweepRows(P(0.65, alpha=0.2), np.pi / 4, cs,
                                      'C,VHS,VB')),
        ('fig9.csv', PHASE_HEADER, phases),
    ]


def writeFigures(outDir, nPoints=SCAN_POINTS, phasePoints=PHASE_POINTS,
                 sweepPoints=SWEEP_POINTS, progress=None):
    '''Write every panel CSV into outDir; returns the written paths'''
    try:
        os.makedirs(outDir, exist_ok=True)
    except OSError as err:
        raise OutputError('cannot create %s: %s' % (outDir, err))
    written = []
    for name, header, build in figurePanels(nPoints, phasePoints,
                                            sweepPoints):
        path = os.path.join(outDir, name)
        writeCsv(path, header, build())
        if progress is not None:
            progress(path)
        written.append(path)
    return written
