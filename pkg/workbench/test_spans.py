import unittest

import sys,os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))
import spans
import multicat
from multicat import ObjFamily,Rig
import finset as fs
from finset import FinSet
from common import StructuralError


def pair(): return ObjFamily.seq(['*','*'])
def fold(): return fs.constant(FinSet.canonical(2),'1')


class Test_Spans(unittest.TestCase):
    def test_01_category(self):
        rep=spans.check_span_category(multicat.terminal(),2)
        self.assertTrue(rep.ok,msg=str(rep.violations[:1]))
        self.assertGreater(rep.stats['instances:span-associativity'],0)
    def test_02_not_a_span(self):
        M=multicat.terminal()
        self.assertRaises(StructuralError,lambda: spans.make_span(M,fs.identity(FinSet.canonical(2)),multicat.identity_loose(M,ObjFamily.seq(['*'])),pair()))
        self.assertRaises(StructuralError,lambda: spans.compose_spans(M,spans.identity_span(M,pair()),spans.identity_span(M,ObjFamily.seq(['*']))))
    def test_03_tight_then_loose(self):
        M=multicat.terminal()
        X=ObjFamily.seq(['*'])
        s=spans.tight_span(M,X,fs.constant(FinSet.canonical(2),'1'))
        self.assertEqual(s.tgt,pair())
        self.assertEqual(spans.compose_spans(M,spans.identity_span(M,pair()),s),s)
        self.assertEqual(spans.compose_spans(M,s,spans.identity_span(M,X)),s)


class Test_Universal(unittest.TestCase):
    def test_01_terminal(self):
        M=multicat.terminal()
        w=spans.find_universal_product(M,pair(),fold(),2)
        self.assertIsNotNone(w)
        self.assertTrue(w.flag('universal'))
        self.assertEqual(w.P,ObjFamily.seq(['*']))
        self.assertTrue(spans.factors_through_spans(M,w,2))
        self.assertTrue(spans.spanmap_is_opfibration(M,2))
    def test_02_rig(self):
        M,_=multicat.from_rig(Rig.cyclic(2))
        self.assertIsNone(spans.find_universal_product(M,pair(),fold(),2))
        self.assertIsNotNone(spans.find_universal_product(M,pair(),fs.identity(FinSet.canonical(2)),2))
        self.assertFalse(spans.spanmap_is_opfibration(M,2,cross_check=False))
    def test_03_wrong_index(self):
        self.assertRaises(StructuralError,lambda: spans.find_universal_product(multicat.terminal(),ObjFamily.seq(['*']),fold(),2))
    def test_04_witness_shape(self):
        M=multicat.terminal()
        w=spans.find_universal_product(M,pair(),fold(),2)
        self.assertRaises(ValueError,lambda: spans.ProductWitness(X=pair(),f=fs.identity(FinSet.canonical(2)),P=w.P,pi=w.pi))


if __name__=='__main__':
    unittest.main()
