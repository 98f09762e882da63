import unittest

import sys,os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))
import fincat
from fincat import FinCategory,FinFunctor
from finset import FinSet
from common import LawValidationError,StructuralError


def twisted():
    'One object, arrows e, a, b with identity e; a∘a=b is not associative with the rest'
    table={('a','a'):'b',('a','b'):'a',('b','a'):'b',('b','b'):'a'}
    return fincat.from_arrows(['*'],[('e','*','*'),('a','*','*'),('b','*','*')],{'*':'e'},
        lambda g,f: f if g=='e' else (g if f=='e' else table[(g,f)]))

def points():
    'The presheaf on 0<1 with P(1)={x,y} both restricting to u ∈ P(0)'
    action={('0<=0','u'):'u',('1<=1','x'):'x',('1<=1','y'):'y',('0<=1','x'):'u',('0<=1','y'):'u'}
    return {'0':['u'],'1':['x','y']},action


class Test_Category(unittest.TestCase):
    def test_01_ordinal(self):
        C=fincat.ordinal(3)
        for A,B,n in [('0','2',1),('2','0',0),('1','1',1)]: self.assertEqual(len(C.hom(A,B)),n)
        self.assertEqual(C.comp('1<=2','0<=1'),'0<=2')
        self.assertEqual(C.ident('1'),'1<=1')
        self.assertTrue(C.check_laws().ok)
        self.assertRaises(StructuralError,lambda: C.comp('0<=1','1<=2'))
    def test_02_monoid(self):
        C=fincat.from_monoid(['0','1','2'],lambda x,y: str((int(x)+int(y))%3),'0')
        self.assertTrue(C.check_laws().ok)
        self.assertTrue(all(C.is_iso(a) for a in C.arrow_ids()))
        Z=fincat.from_monoid(['0','1'],lambda x,y: str(int(x)*int(y)),'1')
        self.assertEqual([a for a in Z.arrow_ids() if Z.is_iso(a)],['1'])
    def test_03_associativity_violation(self):
        rep=twisted().check_laws()
        self.assertFalse(rep.ok)
        self.assertEqual(rep.laws_violated(),{'associativity'})
        self.assertEqual(set(rep.violations[0].instance.keys()),{'h','g','f'})
        self.assertRaises(LawValidationError,lambda: twisted().validated())
    def test_04_malformed(self):
        # composition row missing for (id,id)
        self.assertRaises(ValueError,lambda: FinCategory(objects=FinSet.of(['*']),arrows=(('id','*','*'),),identities=(('*','id'),),composition=()))
        # identity of the wrong type
        self.assertRaises(ValueError,lambda: FinCategory(objects=FinSet.of(['A','B']),arrows=(('f','A','B'),),identities=(('A','f'),('B','f')),composition=()))
    def test_05_json(self):
        C=fincat.ordinal(2)
        self.assertEqual(FinCategory.from_json_obj(C.to_json_obj()),C)
    def test_06_with_zeros(self):
        C=fincat.with_zeros(['A','B'],[('f','A','B')],{})
        self.assertTrue(C.check_laws().ok)
        self.assertEqual(set(C.hom('A','B')),{'0_A_B','f'})
        self.assertEqual(C.comp('0_B_B','f'),'0_A_B')


class Test_Functor(unittest.TestCase):
    def test_01_identity(self):
        for C in [fincat.ordinal(3),fincat.terminal(),twisted()]:
            self.assertTrue(FinFunctor.identity(C).check_laws().ok)
    def test_02_discrete_fibration(self):
        C=fincat.ordinal(2)
        sets,action=points()
        P=fincat.elements(C,sets,action)
        self.assertTrue(P.check_laws().ok)
        self.assertEqual(len(P.src.objects),3)
        self.assertTrue(fincat.is_discrete_fibration(P))
        self.assertTrue(fincat.is_discrete_fibration(FinFunctor.identity(C)))
        self.assertFalse(fincat.is_discrete_fibration(FinFunctor.to_terminal(C)))
    def test_03_bad_action(self):
        C=fincat.ordinal(2)
        sets,action=points()
        action[('0<=1','x')]='v'
        self.assertRaises(LawValidationError,lambda: fincat.elements(C,sets,action))
    def test_04_fam_functor(self):
        F=FinFunctor.to_terminal(fincat.ordinal(2))
        self.assertTrue(fincat.fam_functor(F,2).check_laws().ok)


class Test_Families(unittest.TestCase):
    def test_01_objects(self):
        C=fincat.ordinal(2)
        self.assertEqual(len(fincat.fam_objects(C,2)),7)
        self.assertIn('[0|1]',fincat.fam_objects(C,2))
        self.assertTrue(fincat.fam(C,2).check_laws().ok)
        self.assertRaises(ValueError,lambda: fincat.fam(C,0))
    def test_02_connected(self):
        C=fincat.ordinal(2)
        D=fincat.fam(C,2)
        self.assertEqual(fincat.connected_objects(D,fincat.fam_sum_witnesses(C,2)),FinSet.of(['[0]','[1]']))
    def test_03_decompose(self):
        C=fincat.ordinal(2)
        D=fincat.fam(C,2)
        w=fincat.decompose(C,('0','1'))
        self.assertEqual(w.summands,('[0]','[1]'))
        fincat.check_sum_witness(D,w)
        bad=fincat.SumWitness(total='[0|1]',summands=('[0]',),injections=(w.injections[0],))
        self.assertRaises(LawValidationError,lambda: fincat.check_sum_witness(D,bad))


if __name__=='__main__':
    unittest.main()
