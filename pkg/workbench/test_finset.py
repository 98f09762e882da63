import unittest
import hypothesis
import hypothesis.strategies as strat

import sys,os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))
import finset as fs
from finset import FinSet,FinMap,OrderedMap,SectionedMap
from common import StructuralError


def maps_between(n,m):
    'Random maps {1..n} → {1..m}'
    return strat.lists(strat.integers(1,m),min_size=n,max_size=n).map(
        lambda imgs: FinMap.of(FinSet.canonical(n),FinSet.canonical(m),{str(i+1):str(k) for i,k in enumerate(imgs)}))

@strat.composite
def chains(draw,length):
    'Composable maps f1: S0→S1, f2: S1→S2, … between non-empty canonical sets'
    ns=[draw(strat.integers(1,4)) for _ in range(length+1)]
    return [draw(maps_between(ns[k],ns[k+1])) for k in range(length)]

@strat.composite
def cospans(draw):
    'f: I→J and g: L→J'
    j=draw(strat.integers(1,3))
    return draw(maps_between(draw(strat.integers(0,4)),j)),draw(maps_between(draw(strat.integers(0,4)),j))


class Test_FinSet(unittest.TestCase):
    def test_01_token_order(self):
        for toks,expect in [
                (['10','2','1'],('1','2','10')),
                (['b','3','a'],('3','a','b')),
                ([],()),
            ]:
            self.assertEqual(FinSet.of(toks).elements,expect)
    def test_02_duplicates(self):
        self.assertRaises(ValueError,lambda: FinSet.of(['1','1']))
    def test_03_canonical(self):
        self.assertTrue(FinSet.canonical(3).is_canonical())
        self.assertFalse(FinSet.of(['0','1']).is_canonical())
        self.assertEqual(FinSet.canonical(0),FinSet())
        self.assertEqual(FinSet.of(['a','b']).position('b'),1)


class Test_FinMap(unittest.TestCase):
    def test_01_totality(self):
        self.assertRaises(ValueError,lambda: FinMap(dom=FinSet.canonical(2),cod=FinSet.canonical(1),table=(('1','1'),)))
        self.assertRaises(ValueError,lambda: FinMap.of(['1'],['1'],{'1':'2'}))
    def test_02_compose_inverse(self):
        f=FinMap.of(['1','2'],['a','b'],{'1':'b','2':'a'})
        g=FinMap.of(['a','b'],['x'],{'a':'x','b':'x'})
        self.assertEqual(fs.compose(g,f),fs.constant(['1','2'],'x'))
        self.assertTrue(fs.compose(fs.inverse(f),f).is_identity())
        self.assertRaises(StructuralError,lambda: fs.inverse(g))
        self.assertRaises(StructuralError,lambda: fs.compose(f,g))
    def test_03_predicates(self):
        for f,inj,surj in [
                (FinMap.of(['1','2'],['1','2','3'],{'1':'3','2':'1'}),True,False),
                (fs.constant(FinSet.canonical(3),'1'),False,True),
                (fs.empty_map(['1']),True,False),
                (fs.empty_map(),True,True),
            ]:
            self.assertEqual((f.is_injective(),f.is_surjective()),(inj,surj))
    def test_04_restrict_order_iso(self):
        f=FinMap.of(['1','2','3'],['a','b'],{'1':'a','2':'b','3':'a'})
        self.assertEqual(fs.restrict(f,['1','3'],['a']).as_dict(),{'1':'a','3':'a'})
        self.assertRaises(StructuralError,lambda: fs.restrict(f,['4']))
        self.assertEqual(fs.order_iso(['x','y']).as_dict(),{'x':'1','y':'2'})
    def test_05_fibers(self):
        f=FinMap.of(['1','2','3'],['1','2','3'],{'1':'3','2':'1','3':'3'})
        self.assertEqual(fs.fibers(f),{'1':FinSet.of(['2']),'2':FinSet(),'3':FinSet.of(['1','3'])})
        self.assertRaises(StructuralError,lambda: fs.fiber(f,'4'))
    def test_06_sums(self):
        self.assertEqual(fs.sum_sets([['1'],['1','2']]).elements,('0:1','1:1','1:2'))
        self.assertEqual(fs.injection([['1'],['1','2']],1).as_dict(),{'1':'1:1','2':'1:2'})
        s=fs.sum([fs.identity(['1']),fs.constant(['1','2'],'1')])
        self.assertEqual(s.as_dict(),{'0:1':'0:1','1:1':'1:1','1:2':'1:1'})
    def test_07_enumeration(self):
        for n,m,maps,bij in [(2,3,9,0),(3,3,27,6),(0,2,1,0),(0,0,1,1),(2,0,0,0)]:
            self.assertEqual(len(list(fs.all_maps(FinSet.canonical(n),FinSet.canonical(m)))),maps)
            self.assertEqual(len(list(fs.bijections(FinSet.canonical(n),FinSet.canonical(m)))),bij)
        self.assertEqual([len(S) for S in fs.canonical_sets(3,start=1)],[1,2,3])


class Test_Pullbacks(unittest.TestCase):
    def test_01_along_identity(self):
        f=FinMap.of(['1','2'],['1','2'],{'1':'2','2':'2'})
        sq=fs.pullback(f,fs.identity(f.cod))
        self.assertTrue(sq.is_pullback())
        self.assertEqual(sq.apex.elements,('(1,2)','(2,2)'))
        self.assertEqual(fs.compose(f,sq.left),sq.top)
    def test_02_mismatch(self):
        self.assertRaises(StructuralError,lambda: fs.pullback(fs.identity(['1']),fs.identity(['2'])))
    def test_03_not_a_pullback(self):
        f=fs.constant(['1','2'],'*')
        # apex {1} → {1,2}×{1,2} misses three of the four pairs
        sq=fs.PbSquare(f=f,g=f,apex=FinSet.of(['1']),top=FinMap.of(['1'],['1','2'],{'1':'1'}),left=FinMap.of(['1'],['1','2'],{'1':'1'}))
        self.assertFalse(sq.is_pullback())
        i=fs.identity(['1','2'])
        x=lambda t: FinMap.of(['x'],['1','2'],{'x':t})
        self.assertRaises(ValueError,lambda: fs.PbSquare(f=i,g=i,apex=FinSet.of(['x']),top=x('1'),left=x('2')))
    def test_04_relabel_canonical(self):
        f=fs.constant(['1','2'],'*')
        sq=fs.pullback(f,f)
        iso=fs.order_iso(sq.apex)
        moved=fs.relabel_square(sq,iso)
        self.assertTrue(moved.is_pullback())
        self.assertFalse(moved.is_canonical())
        self.assertEqual(fs.canonical_form(moved),sq)
    def test_05_paste(self):
        h=FinMap.of(['1','2'],['1'],{'1':'1','2':'1'})
        l=FinMap.of(['a'],['1'],{'a':'1'})
        upper=fs.pullback(h,l)
        f=FinMap.of(['1','2','3'],['1','2'],{'1':'1','2':'2','3':'2'})
        lower=fs.pullback(f,upper.left)
        pasted=fs.paste(lower,upper)
        self.assertEqual(pasted.f,fs.compose(h,f))
        self.assertTrue(pasted.is_pullback())
        self.assertRaises(StructuralError,lambda: fs.paste(upper,upper))
    def test_06_diagonal(self):
        f=fs.constant(['1','2'],'*')
        d=fs.diagonal(f)
        self.assertTrue(d.is_injective())
        self.assertEqual(len(d.cod),4)


class Test_Decorations(unittest.TestCase):
    def test_01_ordered(self):
        f=fs.constant(['1','2'],'*')
        self.assertEqual(OrderedMap.of(f,{'*':['2','1']}).order('*'),('2','1'))
        self.assertEqual(OrderedMap.sorted_on(f).order('*'),('1','2'))
        self.assertRaises(ValueError,lambda: OrderedMap.of(f,{'*':['1']}))
    def test_02_sectioned(self):
        f=fs.constant(['1','2'],'*')
        self.assertEqual(SectionedMap(base=f,section=FinMap.of(['*'],['1','2'],{'*':'2'})).section('*'),'2')
        self.assertRaises(ValueError,lambda: SectionedMap(base=f,section=FinMap.of(['*'],['*'],{'*':'*'})))
        g=FinMap.of(['1'],['1','2'],{'1':'1'})
        self.assertRaises(ValueError,lambda: SectionedMap(base=g,section=FinMap.of(['1','2'],['1'],{'1':'1','2':'1'})))


class Test_Properties(unittest.TestCase):
    @hypothesis.given(chains(3))
    def test_01_associativity(self,fgh):
        f,g,h=fgh
        self.assertEqual(fs.compose(h,fs.compose(g,f)),fs.compose(fs.compose(h,g),f))
    @hypothesis.given(chains(1))
    def test_02_units(self,ff):
        f=ff[0]
        self.assertEqual(fs.compose(fs.identity(f.cod),f),f)
        self.assertEqual(fs.compose(f,fs.identity(f.dom)),f)
    @hypothesis.given(cospans())
    def test_03_pullback_size(self,fg):
        f,g=fg
        sq=fs.pullback(f,g)
        self.assertEqual(len(sq.apex),sum(len(fs.fiber(f,j))*len(fs.fiber(g,j)) for j in f.cod))
        self.assertTrue(sq.is_pullback() and sq.is_canonical())
        self.assertTrue(fs.swap(sq).is_pullback())
        self.assertTrue(sq.to_canonical().is_identity())
    @hypothesis.given(chains(1))
    def test_04_fibers_partition(self,ff):
        f=ff[0]
        self.assertEqual(sum(len(F) for F in fs.fibers(f).values()),len(f.dom))
    @hypothesis.given(strat.permutations(['1','2','3','4']))
    def test_05_inverse(self,perm):
        f=FinMap.of(FinSet.canonical(4),FinSet.canonical(4),{str(i+1):p for i,p in enumerate(perm)})
        self.assertTrue(fs.compose(f,fs.inverse(f)).is_identity())
        self.assertTrue(fs.compose(fs.inverse(f),f).is_identity())


if __name__=='__main__':
    unittest.main()
