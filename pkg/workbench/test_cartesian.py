import unittest
import itertools
import math

import sys,os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))
import cartesian
from cartesian import CMonCategory,RigCart,ThinCart,PerturbedCart,ModuleModel,TableModel
import multicat
from multicat import ObjFamily,Rig,CocartesianMulticat
import fincat
import finset as fs
from finset import FinSet,FinMap
from common import StructuralError,LawValidationError


def z2():
    return multicat.from_rig(Rig.cyclic(2))

def stars(n): return ObjFamily.seq(['*']*n)

def vector(*rs):
    'Arrow (r_1,…,r_n): [*,…,*] → * of R_▶'
    return CocartesianMulticat._arrow(stars(len(rs)),'*',tuple((str(k+1),r) for k,r in enumerate(rs)))

def tangle():
    'f: {1,2,3} → {1,2,3}, 1↦3, 2↦1, 3↦3'
    return FinMap.of(FinSet.canonical(3),FinSet.canonical(3),{'1':'3','2':'1','3':'3'})


class Test_Reindexing(unittest.TestCase):
    def test_01_rig_sums_fibers(self):
        M,G=multicat.from_rig(Rig.cyclic(4))
        r=G.push(vector('2','3','1'),tangle(),stars(3))
        self.assertEqual(dict(r.data),{'1':'3','2':'0','3':'3'})
    def test_02_sets_duplicate_delete(self):
        F,S=cartesian.from_carriers({'A':['0','1']})
        X=ObjFamily.seq(['A']*3)
        alpha=F.function(X,'A',lambda x: x['1'] if x['2']=='1' else '0')
        r=S.push(alpha,tangle(),X)
        for ys in itertools.product('01',repeat=3):
            y=dict(zip(['1','2','3'],ys))
            self.assertEqual(F.evaluate(r,y),y['3'] if y['1']=='1' else '0')
    def test_03_shape_errors(self):
        M,G=z2()
        self.assertRaises(StructuralError,lambda: G.push(vector('1','1'),fs.identity(FinSet.canonical(3)),stars(3)))
        F,S=cartesian.from_carriers({'A':['0'],'B':['0']})
        alpha=F.function(ObjFamily.seq(['A']),'A',lambda x: '0')
        self.assertRaises(StructuralError,lambda: S.push(alpha,fs.identity(FinSet.canonical(1)),ObjFamily.seq(['B'])))
    def test_04_thin_unit(self):
        U=multicat.unit(2)
        G=ThinCart(U)
        weaken=FinMap.of(['1'],['1','2'],{'1':'1'})
        self.assertRaises(StructuralError,lambda: G.push(U.identity('*'),weaken,stars(2)))
    def test_05_bijections(self):
        M,G=z2()
        swap=FinMap.of(['1','2'],['1','2'],{'1':'2','2':'1'})
        r=cartesian.covariant_reindex(G,vector('0','1'),swap,stars(2))
        self.assertEqual(r,vector('1','0'))
        self.assertEqual(r,multicat.reindex_contra(M,vector('0','1'),swap))
        self.assertRaises(StructuralError,lambda: multicat.reindex_contra(M,vector('0','1'),fs.constant(['1','2'],'1')))


class Test_Laws(unittest.TestCase):
    def test_01_valid(self):
        M,G=z2()
        T=multicat.terminal()
        for M,G in [(M,G),(T,ThinCart(T)),cartesian.from_meets(fincat.ordinal(2))]:
            rep=cartesian.check_cartesian(M,G,2)
            self.assertTrue(rep.ok,msg=f'{G.name}: {rep.violations[:1]}')
            self.assertGreater(rep.stats['instances:frobenius'],0)
    def test_02_fault_injection(self):
        M,G=z2()
        P=PerturbedCart(G,vector('1','1'),fs.constant(FinSet.canonical(2),'1'),stars(1),vector('1'))
        rep=cartesian.check_cartesian(M,P,2)
        self.assertFalse(rep.ok)
        for law in ['functoriality','frobenius','algebra-multiplication']: self.assertIn(law,rep.laws_violated())
        self.assertNotIn('formulations-agree',rep.laws_violated())
    def test_03_other_structure(self):
        M,G=z2()
        G2=RigCart(M,Rig.boolean())
        self.assertTrue(cartesian.check_cartesian(M,G2,2).ok)
        self.assertIsNotNone(cartesian.first_difference(G,G2,2))
        self.assertIsNone(cartesian.first_difference(G,cartesian.tabulate_cart(G,2),2))
    def test_04_foreign_structure(self):
        M,_=z2()
        _,G=z2()
        self.assertRaises(StructuralError,lambda: cartesian.check_cartesian(M,G,1))
    def test_05_faults_in_both_formulations(self):
        M,G=multicat.from_rig(Rig.cyclic(3))
        P=PerturbedCart(G,vector('1','1'),fs.constant(FinSet.canonical(2),'1'),stars(1),vector('0'))
        v=cartesian.check_cartesian(M,P,2).laws_violated()
        for law in ['tailing','beck-chevalley','algebra-composition']: self.assertIn(law,v)
        self.assertNotIn('formulations-agree',v)


class Test_Enrichment(unittest.TestCase):
    def test_01_extract(self):
        M,G=z2()
        self.assertEqual(cartesian.extract_enrichment(G),cartesian.rig_enrichment(Rig.cyclic(2)))
    def test_02_bilinearity(self):
        C=fincat.from_monoid(['0','1','2'],lambda x,y: str(int(x)*int(y)%3),'1')
        E=CMonCategory.of(C,lambda x,y: max(x,y),lambda A,B: '0')
        self.assertIn('bilinearity',E.check_laws().laws_violated())
        self.assertRaises(LawValidationError,lambda: cartesian.from_cmon_enriched(E))
    def test_03_chaotic(self):
        C=fincat.from_preorder(['A','B'],lambda a,b: True)
        E=CMonCategory.of(C,lambda x,y: x,lambda A,B: f'{A}<={B}')
        M,G=cartesian.from_cmon_enriched(E)
        self.assertTrue(cartesian.check_cartesian(M,G,2).ok)
    def test_04_partial_tables(self):
        C=fincat.from_preorder(['A','B'],lambda a,b: True)
        self.assertRaises(ValueError,lambda: CMonCategory(category=C,add=(),zeros=()))


class Test_Free(unittest.TestCase):
    def test_01_counts(self):
        for bound,counts in [(3,[1,4,10]),(2,[1,3,6])]:
            E,_=cartesian.free_cartesian(multicat.terminal(),bound)
            self.assertEqual([len(E.homs(stars(n),'*')) for n in range(3)],counts)
        E=cartesian.espan(multicat.unit(3),3)
        self.assertEqual([len(E.homs(stars(n),'*')) for n in range(4)],[0,1,2,3])
    def test_02_monad(self):
        for M in [multicat.terminal(),multicat.from_category(fincat.ordinal(2)),multicat.unit(3)]:
            rep=cartesian.check_monad_laws(M,3)
            self.assertTrue(rep.ok,msg=f'{M.name}: {rep.violations[:1]}')
            self.assertGreater(rep.stats['instances:associativity'],0)
    def test_03_free_is_cartesian(self):
        E,G=cartesian.free_cartesian(multicat.terminal(),1)
        self.assertTrue(multicat.validate(E,1).ok)
        self.assertTrue(cartesian.check_cartesian(E,G,1).ok)
    def test_04_gamma_of_unit(self):
        M,G=z2()
        for a in M.canonical_arrows(2): self.assertEqual(G.gamma(cartesian.monad_unit(M,2)(a)),a)
    def test_05_multisets(self):
        C=fincat.from_arrows(['A','B'],[('iA','A','A'),('iB','B','B'),('f','A','B'),('g','A','B')],{'A':'iA','B':'iB'},
            lambda g,f: f if g in ('iA','iB') else g)
        E,_=cartesian.free_cartesian(multicat.from_category(C),3)
        for A,B in itertools.product('AB',repeat=2):
            m=len(C.hom(A,B))
            self.assertEqual(len(E.homs(ObjFamily.seq([A]),B)),1+sum(math.comb(m+k-1,k) for k in range(1,4)),msg=f'{A}→{B}')
        M=multicat.from_category(fincat.from_monoid(['0','1'],lambda x,y: str(int(x)*int(y)),'1'))
        E,_=cartesian.free_cartesian(M,3)
        self.assertEqual([len(E.homs(stars(n),'*')) for n in range(3)],[1,10,35])


class Test_Models(unittest.TestCase):
    def test_01_regular_module(self):
        M,G=z2()
        self.assertTrue(cartesian.check_model(M,G,ModuleModel.regular(Rig.cyclic(2)),2).ok)
    def test_02_wrong_action(self):
        M,G=z2()
        R=Rig.cyclic(2)
        bad=ModuleModel.of(R,['0','1'],lambda x,y: str(int(x)^int(y)),'0',lambda r,x: x)
        rep=cartesian.check_model(M,G,bad,2)
        self.assertEqual(rep.laws_violated(),{'model-cartesian'})
    def test_03_terminal(self):
        T=multicat.terminal()
        G=ThinCart(T)
        disjunction=TableModel.from_function(T,{'*':['0','1']},lambda a,xs: str(max([int(x) for x in xs],default=0)),2)
        self.assertIn('model-cartesian',cartesian.check_model(T,G,disjunction,2).laws_violated())
        point=TableModel.from_function(T,{'*':['0']},lambda a,xs: '0',2)
        self.assertTrue(cartesian.check_model(T,G,point,2).ok)
    def test_04_missing_carrier(self):
        M,G=z2()
        self.assertRaises(StructuralError,lambda: cartesian.check_model(M,G,TableModel({'A':['0']},{}),1))


if __name__=='__main__':
    unittest.main()
