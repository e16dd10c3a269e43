#!/usr/bin/env python
##############################################################################
#Version: 2.0
#Package: xxzgeom
#
#Description: Unit test for the Hilbert-Schmidt and Bures geometry
##############################################################################

import os
import sys
import unittest
sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)),
                                '..', 'source'))

import numpy as np

import entanglement
import milburnDynamics as md
import stateGeometry as sg
from xxzErrors import DomainError
from xxzModel import ModelParams


class StateGeometryTest(unittest.TestCase):

    def setUp(self):
        self.p = ModelParams(0.5, alpha=0.05)

    def testHsRateExample(self):
        '''Rate at J = 0.5, alpha = 0.05, eta = 1'''
        expected = 2 * np.sqrt(2) * np.exp(-0.1) * 0.5 * np.sqrt(1.0025)
        self.assertAlmostEqual(sg.hsRateClosedForm(self.p, 1.0), expected,
                               places=14)
        self.assertAlmostEqual(sg.hsRateClosedForm(self.p, 1.0), 1.2812319,
                               delta=1e-7)

    def testHsRateNumeric(self):
        '''Central difference of the propagated state matches the rate'''
        for eta in (0.3, 1.0, 2.2, 5.0):
            for p in (self.p, ModelParams(0.3, 1.0, 0.5, alpha=0.1)):
                closed = sg.hsRateClosedForm(p, eta)
                self.assertAlmostEqual(sg.hsRateNumeric(p, eta) / closed,
                                       1.0, delta=1e-5)
        with self.assertRaises(DomainError):
            sg.hsRateNumeric(self.p, 1.0, deltaT=0.0)

    def testHsDistance(self):
        '''Distance between |du> and |ud> is sqrt 2'''
        other = np.zeros((4, 4))
        other[1, 1] = 1.0
        self.assertAlmostEqual(sg.hsDistance(md.initialState(), other),
                               np.sqrt(2.0))

    def testSpeedIdentity(self):
        '''V_HS = 4 alpha J L_HS and equals |d L_HS / d eta|'''
        etas = np.linspace(0.1, 6.0, 25)
        rate = sg.hsRateClosedForm(self.p, etas)
        speed = sg.hsSpeed(self.p, etas)
        np.testing.assert_allclose(speed, 4 * 0.05 * 0.5 * rate,
                                   rtol=1e-12)
        delta = 1e-4
        slope = (sg.hsRateClosedForm(self.p, etas + delta)
                 - sg.hsRateClosedForm(self.p, etas - delta)) / (2 * delta)
        np.testing.assert_allclose(np.abs(slope), speed, rtol=1e-8)

    def testConcurrenceForms(self):
        '''Forms written through C agree with the eta forms'''
        etas = np.array([0.3, 1.0, 2.0, 4.0])
        c = entanglement.concurrenceClosedForm(self.p, etas)
        np.testing.assert_allclose(sg.hsRateFromConcurrence(self.p, c, etas),
                                   sg.hsRateClosedForm(self.p, etas),
                                   rtol=1e-12)
        np.testing.assert_allclose(
            sg.hsSpeedFromConcurrence(self.p, c, etas),
            sg.hsSpeed(self.p, etas), rtol=1e-12)
        np.testing.assert_allclose(sg.fidelityOfSeparabilityNoise(self.p,
                                                                  etas),
                                   sg.fidelityOfSeparability(c))
        np.testing.assert_allclose(sg.buresDistanceNoise(self.p, etas),
                                   sg.buresDistanceNormalized(c))
        np.testing.assert_allclose(sg.buresSpeedNoise(self.p, etas),
                                   sg.buresSpeed(c))

    def testDomains(self):
        '''C outside [0, 1] and sin 2 eta = 0 are rejected'''
        with self.assertRaises(DomainError):
            sg.fidelityOfSeparability(1.5)
        with self.assertRaises(DomainError):
            sg.buresDistanceRaw(-0.2)
        with self.assertRaises(DomainError):
            sg.hsRateFromConcurrence(self.p, 0.5, np.pi / 2)
        self.assertEqual(sg.fidelityOfSeparability(1 + 1e-13), 0.5)

    def testUhlmannFidelity(self):
        '''1 for equal states, 0 for orthogonal pure states'''
        rho = md.evolvedStateClosedForm(self.p, 0.9)
        self.assertAlmostEqual(sg.fidelityUhlmann(rho, rho), 1.0, places=10)
        other = np.zeros((4, 4))
        other[1, 1] = 1.0
        self.assertAlmostEqual(sg.fidelityUhlmann(md.initialState(), other),
                               0.0, places=12)

    def testBuresValues(self):
        '''Endpoints, a mid value and V_B = sqrt(F / 8)'''
        self.assertEqual(sg.fidelityOfSeparability(0.0), 1.0)
        self.assertEqual(sg.fidelityOfSeparability(1.0), 0.5)
        self.assertAlmostEqual(sg.buresDistanceNormalized(0.0), 0.0,
                               places=12)
        self.assertAlmostEqual(sg.buresDistanceNormalized(1.0), 1.0,
                               places=12)
        self.assertAlmostEqual(sg.buresDistanceNormalized(0.5), 0.341081,
                               delta=1e-6)
        cs = np.linspace(0, 1, 1001)
        self.assertTrue(np.all(np.diff(sg.buresDistanceNormalized(cs)) > 0))
        self.assertTrue(np.all(np.diff(sg.buresSpeed(cs)) < 0))
        np.testing.assert_allclose(
            sg.buresSpeed(cs), np.sqrt(sg.fidelityOfSeparability(cs) / 8),
            atol=1e-15)
        self.assertAlmostEqual(sg.buresSpeed(1.0), 0.25)
        self.assertAlmostEqual(sg.buresDistanceRaw(1.0), 0.0)

    def testSeparableSamples(self):
        '''Samples are unit-trace positive states, prefix stable in n'''
        sigmas, _, weights = sg._sampleSeparable(300, 5)
        self.assertEqual(sigmas.shape, (300, 4, 4))
        np.testing.assert_allclose(np.trace(sigmas, axis1=1, axis2=2), 1.0)
        self.assertGreater(np.min(np.linalg.eigvalsh(sigmas)), -1e-12)
        np.testing.assert_allclose(np.sum(weights, axis=1), 1.0)
        fewer, _, _ = sg._sampleSeparable(100, 5)
        np.testing.assert_allclose(fewer, sigmas[:100], rtol=1e-14)

    def testSeparableTraceMonotone(self):
        '''Running maximum never decreases and grows with n'''
        d = md.evolvedStateClosedForm(self.p, 1.0)
        trace = sg.separableFidelityTrace(d, 500, 3)
        self.assertTrue(np.all(np.diff(trace) >= 0))
        np.testing.assert_allclose(sg.separableFidelityTrace(d, 200, 3),
                                   trace[:200], rtol=1e-14)

    def testSeparableSearchBound(self):
        '''The search never exceeds the fidelity of separability'''
        for eta in (0.4, 1.0, 2.5):
            d = md.evolvedStateClosedForm(self.p, eta)
            bound = sg.fidelityOfSeparability(
                entanglement.concurrenceWootters(d).value)
            found = sg.separableFidelitySearch(d, 256, 9)
            self.assertLessEqual(found, bound + 1e-6)

    def testSeparableSearchMonotone(self):
        '''More samples never lower the polished bound'''
        d = md.evolvedStateClosedForm(ModelParams(0.3, alpha=0.05), 2.0)
        found = [sg.separableFidelitySearch(d, n, 7)
                 for n in (1, 2, 3, 5, 8, 13, 40)]
        self.assertTrue(np.all(np.diff(found) >= 0), found)

    def testSeparableSearchBellState(self):
        '''Nothing separable beats one half on a Bell state'''
        bell = np.zeros((4, 4))
        bell[1:3, 1:3] = 0.5
        self.assertAlmostEqual(entanglement.concurrenceWootters(bell).value,
                               1.0, places=12)
        for seed in (1, 9):
            found = sg.separableFidelitySearch(bell, 256, seed)
            self.assertLessEqual(found, 0.5 + 1e-6)
            self.assertGreater(found, 0.4)

    def testSeparableSearchReachesProduct(self):
        '''A product state is found with fidelity close to 1'''
        found = sg.separableFidelitySearch(md.initialState(), 256, 9)
        self.assertGreaterEqual(found, 0.99)
        raw = sg.separableFidelitySearch(md.initialState(), 256, 9,
                                         refine=False)
        self.assertLessEqual(raw, found)

    def testGeometrySample(self):
        '''All quantities at one eta from the propagated state'''
        s = sg.geometrySample(self.p, 1.0)
        c = entanglement.concurrenceClosedForm(self.p, 1.0)
        self.assertAlmostEqual(s.concurrence, c, places=10)
        self.assertAlmostEqual(s.hsRate, sg.hsRateClosedForm(self.p, 1.0))
        self.assertAlmostEqual(s.buresSpeed, sg.buresSpeed(c), places=10)
        self.assertIsNone(s.phase)


if __name__ == '__main__':
    unittest.main()
