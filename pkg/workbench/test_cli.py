import unittest
import unittest.mock
import io
import json
import tempfile

import sys,os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))
import cli
import corpus
from corpus import WorkbenchDoc,SchemaMismatch,UnknownKind
import multicat
from multicat import Rig,TableMulticat
import cartesian
import fincat
from common import StructuralError


TMP=tempfile.mkdtemp(prefix='workbench-')

def stash(name,doc):
    'Write a document (or a raw JSON object) to the scratch directory'
    path=os.path.join(TMP,name)
    with open(path,'w',encoding='utf-8') as f: f.write(doc.dumps() if isinstance(doc,WorkbenchDoc) else json.dumps(doc))
    return path

def run(*argv):
    out=io.StringIO()
    code=cli.main(list(argv),out=out)
    return code,out.getvalue()

def twisted():
    table={('a','a'):'b',('a','b'):'a',('b','a'):'b',('b','b'):'a'}
    return fincat.from_arrows(['*'],[('e','*','*'),('a','*','*'),('b','*','*')],{'*':'e'},
        lambda g,f: f if g=='e' else (g if f=='e' else table[(g,f)]))


class Test_Corpus(unittest.TestCase):
    def test_01_refs(self):
        for text,kind,name,path in [
                ('-','stdin','',''),
                ('native','keyword','native',''),
                ('terminal','constructor','terminal',''),
                ('example:rig_z2','example','rig_z2',''),
                ('from_rig:z2.json','constructor','from_rig','z2.json'),
                ('doc.json','file','','doc.json'),
            ]:
            r=corpus.parse_ref(text)
            self.assertEqual((r.kind,r.name,r.path),(kind,name,path))
    def test_02_loads(self):
        doc=corpus.example('rig_z2')
        self.assertEqual(corpus.loads(doc.dumps()),doc)
        for text,err in [
                ('{not json','SchemaMismatch'),
                (json.dumps({'kind':'frobnicator','payload':{}}),'UnknownKind'),
                (json.dumps({'kind':'rig','payload':{'carrier':['0']}}),'SchemaMismatch'),
                (json.dumps({'kind':'rig','version':'one','payload':{}}),'SchemaMismatch'),
            ]:
            with self.assertRaises(SchemaMismatch) as cm: corpus.loads(text)
            self.assertEqual(cm.exception.__class__.__name__,err)
        self.assertTrue(issubclass(UnknownKind,StructuralError))
    def test_03_resolve(self):
        p=stash('ordinal.json',corpus.encode(fincat.ordinal(2)))
        doc=corpus.resolve(f'from_category:{p}')
        self.assertEqual((doc.kind,doc.payload['constructor']),('multicat','from_category'))
        self.assertEqual(corpus.resolve(f'category:{p}'),corpus.read(p))
        self.assertRaises(StructuralError,lambda: corpus.resolve(f'from_rig:{p}'))
        self.assertRaises(StructuralError,lambda: corpus.resolve(f'rig:{p}'))
        self.assertRaises(StructuralError,lambda: corpus.resolve(os.path.join(TMP,'missing.json')))
        self.assertRaises(StructuralError,lambda: corpus.example('nope'))
    def test_04_decode(self):
        M,G=corpus.decode_multicat(corpus.example('rig_z2'),2)
        self.assertIsInstance(G,cartesian.RigCart)
        self.assertIs(corpus.decode_cart(M,G,corpus.resolve('native')),G)
        self.assertIsInstance(corpus.decode_cart(M,G,corpus.resolve('thin')),cartesian.ThinCart)
        N,none=corpus.decode_multicat(corpus.example('n_seq'),2)
        self.assertIsNone(none)
        self.assertRaises(StructuralError,lambda: corpus.decode_cart(N,none,corpus.resolve('native')))
        self.assertRaises(StructuralError,lambda: corpus.decode(corpus.resolve('native')))
        self.assertRaises(StructuralError,lambda: corpus.encode(object()))
    def test_05_tables(self):
        M=multicat.tabulate(multicat.terminal(),2)
        doc=corpus.loads(corpus.encode(M,arity_bound=2).dumps())
        N,_=corpus.decode_multicat(doc)
        self.assertEqual(N.arrows,M.arrows)
        R,G=multicat.from_rig(Rig.cyclic(2))
        T=cartesian.tabulate_cart(G,1)
        back=corpus.decode_cart(R,G,corpus.loads(corpus.encode(T).dumps()))
        self.assertIsNone(cartesian.first_difference(G,back,1))


class Test_Exit(unittest.TestCase):
    def test_01_pass(self):
        for argv in [
                ('validate','terminal','--bound','2'),
                ('validate','example:n_seq','--bound','2'),
                ('check-cartesian','example:rig_z2','--bound','2'),
                ('products','example:prodcat2','--equivalence','--bound','2'),
                ('free-cartesian','terminal','--bound','1'),
            ]:
            code,out=run(*argv)
            self.assertEqual(code,0,msg=f'{argv}: {out}')
            self.assertEqual(json.loads(out)['status'],'pass')
    def test_02_violations(self):
        E=TableMulticat(['*'],{'id':(('*',),'*'),'e':(('*',),'*')},{'*':'id'},{('id',(1,)):'id',('e',(1,)):'e'},
            {('id',('id',)):'id',('id',('e',)):'e',('e',('id',)):'id',('e',('e',)):'e'},bound=1,name='E')
        for name,doc in [
                ('twisted.json',corpus.encode(twisted())),
                ('degenerate.json',corpus.encode(E,arity_bound=1)),
                ('norig.json',corpus.encode(Rig.of(['0','1'],lambda x,y: max(x,y),lambda x,y: '1'))),
            ]:
            code,out=run('validate',stash(name,doc))
            self.assertEqual(code,1,msg=name)
            self.assertEqual(json.loads(out)['status'],'fail')
            self.assertGreater(len(json.loads(out)['violations']),0)
    def test_03_input_errors(self):
        for argv in [
                ('validate',stash('unknown.json',{'kind':'frobnicator','payload':{}})),
                ('validate','native'),
                ('validate','terminal','--bound','-1'),
                ('check-cartesian','example:n_seq','--bound','1'),
            ]:
            code,out=run(*argv)
            self.assertEqual(code,2,msg=f'{argv}: {out}')
            self.assertIn('type',json.loads(out))
    def test_04_bound_exceeded(self):
        p=stash('short.json',corpus.encode(multicat.tabulate(multicat.terminal(),1),arity_bound=1))
        code,out=run('validate',p,'--bound','2')
        self.assertEqual(code,3)
        self.assertEqual(json.loads(out)['status'],'bound-exceeded')
    def test_05_partial_assign(self):
        obj=corpus.encode(multicat.tabulate(multicat.terminal(),2),arity_bound=2).to_json_obj()
        a=next(a for a in obj['payload']['argument']['arrows'] if len(a['dom']['index'])==2)
        del a['dom']['assign']['2']
        code,out=run('validate',stash('partial.json',obj))
        self.assertEqual(code,2,msg=out)
        self.assertIn('type',json.loads(out))


class Test_Commands(unittest.TestCase):
    def test_01_stdin(self):
        with unittest.mock.patch('sys.stdin',io.StringIO(corpus.example('rig_z2').dumps())):
            self.assertEqual(run('check-cartesian','-','--bound','2')[0],0)
    def test_02_deterministic(self):
        argv=('validate','example:n_seq','--bound','2')
        self.assertEqual(run(*argv),run(*argv))
    def test_03_rows(self):
        code,out=run('base-change','terminal','--along','tot','--bound','2')
        self.assertEqual(code,0)
        self.assertIn({'arity':2,'source':1,'result':2},json.loads(out)['rows'])
        code,out=run('burnside','terminal','--bound','2')
        self.assertEqual(json.loads(out)['rows'],[{'x':'*','y':'*','x+y':'*'},{'zero':'*'}])
        code,out=run('free-cartesian','terminal','--skip-laws','--bound','2')
        self.assertEqual(code,0)
        self.assertIn({'X':'[1:*,2:*]','B':'*','arrows':6},json.loads(out)['rows'])
    def test_04_examples(self):
        code,out=run('examples','rig_z2')
        self.assertEqual(code,0)
        self.assertEqual(corpus.loads(out),corpus.example('rig_z2'))
    def test_05_models(self):
        R=Rig.cyclic(2)
        good=stash('module.json',corpus.encode(cartesian.ModuleModel.regular(R)))
        bad=stash('wrong.json',corpus.encode(cartesian.ModuleModel.of(R,['0','1'],lambda x,y: str(int(x)^int(y)),'0',lambda r,x: x)))
        self.assertEqual(run('check-model','example:rig_z2',good,'--bound','2')[0],0)
        code,out=run('check-model','example:rig_z2',bad,'--bound','2')
        self.assertEqual(code,1)
        self.assertEqual({v['law'] for v in json.loads(out)['violations']},{'model-cartesian'})
        self.assertEqual(run('check-model','example:rig_z2','terminal','--bound','1')[0],2)
    def test_06_other_rig(self):
        p=stash('boolean.json',corpus.encode(Rig.boolean()))
        self.assertEqual(run('check-cartesian','example:rig_z2','--gamma',f'rig:{p}','--bound','2')[0],0)
    def test_07_text(self):
        code,out=run('validate','terminal','--bound','1','--format','text')
        self.assertEqual(code,0)
        self.assertIn('pass',out)
    def test_08_all_witnesses(self):
        C=fincat.from_preorder(['A','B'],lambda a,b: True)
        p=stash('chaotic.json',corpus.encode(cartesian.CMonCategory.of(C,lambda x,y: x,lambda A,B: f'{A}<={B}')))
        code,out=run('products',f'from_cmon_enriched:{p}','--all-witnesses','--bound','2')
        self.assertEqual(code,0,msg=out)
        self.assertGreater(json.loads(out)['stats']['instances:product-uniqueness'],0)


if __name__=='__main__':
    unittest.main()
