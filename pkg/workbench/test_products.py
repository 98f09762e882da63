import unittest

import sys,os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))
import products
import spans
import multicat
from multicat import ObjFamily,Rig
import cartesian
from cartesian import CMonCategory,ThinCart
import fincat
import finset as fs
from finset import FinSet
from common import StructuralError


def pair(): return ObjFamily.seq(['*','*'])
def fold(): return fs.constant(FinSet.canonical(2),'1')

def thin_terminal():
    M=multicat.terminal()
    return M,ThinCart(M)


class Test_Algebraic(unittest.TestCase):
    def test_01_terminal(self):
        M,G=thin_terminal()
        w=products.find_algebraic_product(M,G,pair(),fold())
        self.assertIsNotNone(w)
        self.assertTrue(w.flag('algebraic'))
        rep=products.algebraic_product_report(M,G,w)
        self.assertTrue(rep.ok)
        self.assertEqual(rep.stats['instances:first-triangle'],1)
    def test_02_rig_only_bijections(self):
        M,G=multicat.from_rig(Rig.cyclic(2))
        for J in fs.canonical_sets(2,start=1):
            for f in fs.all_maps(FinSet.canonical(2),J):
                self.assertEqual(products.find_algebraic_product(M,G,pair(),f) is not None,f.is_bijective(),msg=f.render())
    def test_03_needs_u(self):
        M,G=thin_terminal()
        w=spans.find_universal_product(M,pair(),fold(),2)
        self.assertRaises(StructuralError,lambda: products.algebraic_product_report(M,G,w))
        self.assertRaises(StructuralError,lambda: products.ap_to_up(M,G,w,2))
        self.assertRaises(StructuralError,lambda: products.ap_to_r(M,G,w,2))


class Test_Conversions(unittest.TestCase):
    def test_01_round_trip(self):
        M,G=thin_terminal()
        w=spans.find_universal_product(M,pair(),fold(),2)
        ap=products.up_to_ap(M,G,w)
        self.assertTrue(ap.flag('algebraic') and ap.flag('universal'))
        self.assertTrue(products.ap_to_up(M,G,ap,2).flag('universal'))
        u=products.ap_to_r(M,G,ap,2)
        self.assertEqual(u,ap.u)
        back=products.r_to_ap(M,G,u)
        self.assertTrue(back.flag('representable'))
        self.assertEqual(back.pi,ap.pi)
    def test_02_rig_identity(self):
        M,G=multicat.from_rig(Rig.cyclic(2))
        ap=products.find_algebraic_product(M,G,pair(),fs.identity(FinSet.canonical(2)))
        self.assertTrue(products.ap_to_up(M,G,ap,2).flag('universal'))
        self.assertEqual(products.ap_to_r(M,G,ap,2),ap.u)
    def test_03_reindex_witness(self):
        M,G=thin_terminal()
        ap=products.find_algebraic_product(M,G,pair(),fold())
        w2=products.reindex_witness(M,ap,fs.identity(FinSet.canonical(1)))
        self.assertEqual(len(w2.X),2)
        self.assertTrue(products.check_algebraic_product(M,G,w2))


class Test_Equivalence(unittest.TestCase):
    def test_01_thin(self):
        for M,G in [thin_terminal(),cartesian.from_meets(fincat.ordinal(2))]:
            rep=products.equivalence_report(M,G,2)
            self.assertTrue(rep.ok,msg=f'{M.name}: {rep.violations[:1]}')
            self.assertTrue(all(r['algebraic'] for r in rep.rows))
            self.assertEqual(rep.stats['instances:products'],len(rep.rows))
    def test_02_chaotic_conversions(self):
        C=fincat.from_preorder(['A','B'],lambda a,b: True)
        M,G=cartesian.from_cmon_enriched(CMonCategory.of(C,lambda x,y: x,lambda A,B: f'{A}<={B}'))
        rep=products.equivalence_report(M,G,2,conversions=True)
        self.assertTrue(rep.ok,msg=str(rep.violations[:1]))
    def test_03_table_columns(self):
        M,G=thin_terminal()
        rows=products.equivalence_table(M,G,1)
        self.assertEqual((rows[0]['X'],rows[0]['f']),('[]','{}'))
        self.assertEqual(set(rows[0]),{'X','f','algebraic','universal','representable','P'})
    def test_04_free_discrete(self):
        E,G=cartesian.free_cartesian(multicat.from_category(fincat.discrete(['x','y'])),2)
        rep=products.equivalence_report(E,G,2)
        self.assertTrue(rep.ok,msg=str(rep.violations[:1]))
        bijective=[f.is_bijective() for n in range(3) for X in E.families(n) for J in fs.canonical_sets(2) for f in fs.all_maps(X.index,J)]
        self.assertEqual([r['algebraic'] for r in rep.rows],bijective)
    def test_05_enriched_witnesses(self):
        C=fincat.with_zeros(['A','B'],[],{})
        M,G=cartesian.from_cmon_enriched(CMonCategory.of(C,lambda x,y: y if x.startswith('0_') else (x if y.startswith('0_') else f'0_{C.src(x)}_{C.tgt(x)}'),
            lambda A,B: f'0_{A}_{B}'))
        rep=products.equivalence_report(M,G,2,conversions=True)
        self.assertTrue(rep.ok,msg=str(rep.violations[:1]))
        self.assertEqual({r['algebraic'] for r in rep.rows},{True,False})
        for n in range(3):
            for X in M.families(n):
                for J in fs.canonical_sets(2):
                    for f in fs.all_maps(X.index,J):
                        ap=products.find_algebraic_product(M,G,X,f)
                        if ap is None: continue
                        up=products.up_to_ap(M,G,spans.find_universal_product(M,X,f,2))
                        r=products.r_to_ap(M,G,multicat.find_opcartesian(M,X,f,2))
                        self.assertTrue(products.canonically_isomorphic(M,ap,up),msg=ap.render())
                        self.assertTrue(products.canonically_isomorphic(M,ap,r),msg=ap.render())
    def test_06_all_witnesses(self):
        C=fincat.from_preorder(['A','B'],lambda a,b: True)
        M,G=cartesian.from_cmon_enriched(CMonCategory.of(C,lambda x,y: x,lambda A,B: f'{A}<={B}'))
        X=ObjFamily.seq(['A'])
        ws=list(products.algebraic_products(M,G,X,fs.identity(X.index)))
        self.assertEqual([w.P.values() for w in ws],[('A',),('B',)])
        self.assertEqual(len(products.comparisons(M,ws[0],ws[1])),1)
        rep=products.product_uniqueness_report(M,G,2)
        self.assertTrue(rep.ok)
        self.assertGreater(rep.stats['instances:product-uniqueness'],0)
    def test_07_needs_cartesian(self):
        M,G=multicat.from_rig(Rig.cyclic(2))
        vec=lambda *rs: multicat.CocartesianMulticat._arrow(ObjFamily.seq(['*']*len(rs)),'*',tuple((str(k+1),r) for k,r in enumerate(rs)))
        P=cartesian.PerturbedCart(G,vec('1','1'),fold(),ObjFamily.seq(['*']),vec('1'))
        self.assertRaises(StructuralError,lambda: products.equivalence_report(M,P,2))


if __name__=='__main__':
    unittest.main()
