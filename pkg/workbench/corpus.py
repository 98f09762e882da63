'''
Workbench documents: the JSON envelope {kind, version, arity_bound, payload}, its schemas,
the decoding of every kind into library objects, and the built-in example corpus.
'''
import pydantic
from typing import Literal,Optional,Tuple,Dict,Any,Callable
import os
import json
import jsonschema
import parsy as P
import sys
sys.path.append(os.path.dirname(os.path.abspath(__file__)))
from common import StructuralError,GG,log
from finset import FinSet
import fincat
from fincat import FinCategory
import multicat
from multicat import Multicat,CommMonoid,Rig,TableMulticat
import cartesian
from cartesian import CartStructure,CMonCategory,TableCart,TableModel,ModuleModel


SCHEMA_DIR=os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))),'schemas')
KINDS=('multicat','category','rig','comm_monoid','cmon_category','cart_structure','model')
VERSION='1.0.0'


class SchemaMismatch(StructuralError):
    'The document does not validate against its schema.'

class UnknownKind(SchemaMismatch):
    'The envelope names a kind the workbench does not know.'


class WorkbenchDoc(pydantic.BaseModel):
    model_config=pydantic.ConfigDict(frozen=True)
    kind: Literal['multicat','category','rig','comm_monoid','cmon_category','cart_structure','model']
    version: str=VERSION
    arity_bound: Optional[int]=None
    payload: Dict[str,Any]

    def to_json_obj(self) -> dict: return self.model_dump(mode='json',exclude_none=True)
    def dumps(self) -> str: return json.dumps(self.to_json_obj(),sort_keys=True,indent=2,ensure_ascii=False)


##
## SCHEMAS
##

_schemas={}
def schema(name: str) -> dict:
    if name not in _schemas:
        with open(os.path.join(SCHEMA_DIR,f'{name}.schema.json'),encoding='utf-8') as f: _schemas[name]=json.load(f)
    return _schemas[name]

def check_schema(obj: Any,name: str):
    'Raise SchemaMismatch listing every error of *obj* against schemas/<name>.schema.json'
    v=jsonschema.Draft202012Validator(schema(name))
    errors=sorted(v.iter_errors(obj),key=lambda e: [str(p) for p in e.path])
    if errors: raise SchemaMismatch(f'{name}: '+'; '.join(f'{"/".join(str(p) for p in e.path) or "(root)"}: {e.message}' for e in errors[:20]))

def loads(text: str) -> WorkbenchDoc:
    'Parse and validate a document (envelope, then payload against the schema of its kind)'
    try: obj=json.loads(text)
    except json.JSONDecodeError as e: raise SchemaMismatch(f'Not JSON: {e}') from None
    if isinstance(obj,dict) and 'kind' in obj and obj['kind'] not in KINDS: raise UnknownKind(f'Unknown document kind {obj["kind"]!r} (known: {", ".join(KINDS)}).')
    check_schema(obj,'workbench')
    doc=WorkbenchDoc.model_validate(obj)
    check_schema(doc.payload,doc.kind)
    for sub,name in _nested(doc): check_schema(sub,name)
    return doc

def _nested(doc: WorkbenchDoc):
    'Embedded documents and the schemas they follow'
    p=doc.payload
    if doc.kind=='cmon_category': yield p['category'],'category'
    if doc.kind=='model' and 'module' in p: yield p['module']['rig'],'rig'
    if doc.kind=='multicat' and CONSTRUCTORS[p['constructor']][0] is not None and 'argument' in p:
        kind=CONSTRUCTORS[p['constructor']][0]
        yield p['argument'],kind
        if kind=='cmon_category': yield p['argument']['category'],'category'

def read(path: str) -> WorkbenchDoc:
    if path=='-': return loads(sys.stdin.read())
    try:
        with open(path,encoding='utf-8') as f: return loads(f.read())
    except OSError as e: raise StructuralError(f'Cannot read {path}: {e.strerror}.') from None


##
## REFERENCES
##

class Ref(pydantic.BaseModel):
    'A document named on the command line: stdin, a file, a built-in constructor or an example'
    model_config=pydantic.ConfigDict(frozen=True)
    kind: Literal['stdin','file','constructor','example','keyword']
    name: str=''
    path: str=''

def _ref_parser():
    name=P.regex(r'[a-z][a-z0-9_]*')
    stdin=P.string('-').result(Ref(kind='stdin'))
    keyword=P.regex(r'native|thin').map(lambda k: Ref(kind='keyword',name=k))
    bare=P.regex(r'terminal|unit').map(lambda c: Ref(kind='constructor',name=c))
    example=(P.string('example:')>>name).map(lambda n: Ref(kind='example',name=n))
    ctor=P.seq(name<<P.string(':'),P.regex(r'.+')).combine(lambda c,p: Ref(kind='constructor',name=c,path=p))
    path=P.regex(r'.+').map(lambda p: Ref(kind='file',path=p))
    return (stdin<<P.eof)|(keyword<<P.eof)|(bare<<P.eof)|(example<<P.eof)|(ctor<<P.eof)|path

_REF=_ref_parser()

def parse_ref(text: str) -> Ref:
    try: return _REF.parse(text)
    except P.ParseError as e: raise StructuralError(f'Cannot parse document reference {text!r}: {e}') from None

def resolve(text: str) -> WorkbenchDoc:
    '''
    Turn a reference into a document: "-", a file name, "terminal", "unit",
    "example:<name>", "<constructor>:<file>" (a multicategory built from the argument
    document in the file) or "rig:<file>" and friends (the argument document itself).
    '''
    r=parse_ref(text)
    if r.kind in ('stdin','file'): return read(r.path or '-')
    if r.kind=='example': return example(r.name)
    if r.kind=='keyword': return WorkbenchDoc(kind='cart_structure',payload={'gamma':r.name})
    if r.name in ('terminal','unit'): return WorkbenchDoc(kind='multicat',payload={'constructor':r.name})
    arg=read(r.path)
    if r.name in CONSTRUCTORS:
        want=CONSTRUCTORS[r.name][0]
        if want is None: raise StructuralError(f'{r.name} takes no argument document.')
        if arg.kind!=want: raise StructuralError(f'{r.name} needs a {want} document, {r.path} holds a {arg.kind}.')
        return WorkbenchDoc(kind='multicat',arity_bound=arg.arity_bound,payload={'constructor':r.name,'argument':arg.payload})
    if r.name in KINDS:
        if arg.kind!=r.name: raise StructuralError(f'{r.path} holds a {arg.kind}, not a {r.name}.')
        return arg
    raise StructuralError(f'Unknown constructor {r.name!r}.')


##
## DECODING
##

def _terminal(arg,bound):
    M=multicat.terminal()
    return M,cartesian.ThinCart(M)
def _unit(arg,bound): return multicat.unit(bound),None
def _from_category(arg,bound): return multicat.from_category(FinCategory.from_json_obj(arg)),None
def _from_rig(arg,bound): return multicat.from_rig(Rig.from_json_obj(arg))
def _from_comm_monoid(arg,bound): return multicat.from_comm_monoid(CommMonoid.from_json_obj(arg)),None
def _from_cmon_enriched(arg,bound): return cartesian.from_cmon_enriched(CMonCategory.from_json_obj(arg))
def _from_meets(arg,bound): return cartesian.from_meets(FinCategory.from_json_obj(arg))
def _from_carriers(arg,bound): return cartesian.from_carriers(arg['carriers'])
def _table(arg,bound): return TableMulticat.from_json_obj(arg),None

# constructor name: (kind of its argument or None, builder returning (M, native Γ or None))
CONSTRUCTORS: Dict[str,Tuple[Optional[str],Callable]]={
    'terminal':(None,_terminal),
    'unit':(None,_unit),
    'from_category':('category',_from_category),
    'from_rig':('rig',_from_rig),
    'from_comm_monoid':('comm_monoid',_from_comm_monoid),
    'from_cmon_enriched':('cmon_category',_from_cmon_enriched),
    'from_meets':('category',_from_meets),
    'from_carriers':(None,_from_carriers),
    'table':(None,_table),
}

def decode(doc: WorkbenchDoc) -> Any:
    'The library object of a self-contained document (all kinds except cart_structure)'
    p=doc.payload
    if doc.kind=='category': return FinCategory.from_json_obj(p)
    if doc.kind=='rig': return Rig.from_json_obj(p)
    if doc.kind=='comm_monoid': return CommMonoid.from_json_obj(p)
    if doc.kind=='cmon_category': return CMonCategory.from_json_obj(p)
    if doc.kind=='model': return decode_model(doc)
    if doc.kind=='multicat': return decode_multicat(doc)[0]
    raise StructuralError('A cartesian structure document needs the multicategory it lives on.')

def decode_multicat(doc: WorkbenchDoc,bound: Optional[int]=None) -> Tuple[Multicat,Optional[CartStructure]]:
    'Multicategory and its native cartesian structure (None when the constructor has none)'
    if doc.kind!='multicat': raise StructuralError(f'Expected a multicat document, got {doc.kind}.')
    name=doc.payload['constructor']
    want,build=CONSTRUCTORS[name]
    arg=doc.payload.get('argument')
    if want is not None:
        if arg is None: raise SchemaMismatch(f'{name} needs an argument.')
        check_schema(arg,want)
    bound=GG.resolve(bound if bound is not None else doc.arity_bound)
    M,G=build(arg,bound)
    log.debug(f'decoded {M!r} with {G!r}')
    return M,G

def decode_cart(M: Multicat,native: Optional[CartStructure],doc: WorkbenchDoc,bound: Optional[int]=None) -> CartStructure:
    '''
    Γ on M from a document: a cart_structure (table rows or "native" / "thin" / "rig:<file>"),
    a rig (summation over fibers on R_▶) or a cmon_category (summation on C_▶).
    '''
    if doc.kind=='rig': return cartesian.RigCart(_cocartesian(M),Rig.from_json_obj(doc.payload).validated())
    if doc.kind=='cmon_category': return cartesian.CMonCart(_cocartesian(M),CMonCategory.from_json_obj(doc.payload).validated())
    if doc.kind!='cart_structure': raise StructuralError(f'A {doc.kind} document is not a cartesian structure.')
    g=doc.payload['gamma']
    if isinstance(g,list): return TableCart.from_json_obj(M,doc.payload,GG.resolve(bound if bound is not None else doc.arity_bound))
    if g=='native':
        if native is None: raise StructuralError(f'{M.name} has no built-in cartesian structure; pass one with --gamma.')
        return native
    if g=='thin': return cartesian.ThinCart(M)
    return decode_cart(M,native,resolve(g),bound)

def _cocartesian(M: Multicat) -> multicat.CocartesianMulticat:
    if not isinstance(M,multicat.CocartesianMulticat): raise StructuralError(f'{M.name} is not of the form C_▶.')
    return M

def decode_model(doc: WorkbenchDoc) -> cartesian.Model:
    p=doc.payload
    if 'table' in p: return TableModel.from_json_obj(p['table'])
    m=p['module']
    return ModuleModel(rig=Rig.from_json_obj(m['rig']),carrier=FinSet.of(m['carrier']),add=tuple(tuple(r) for r in m['add']),
        zero=m['zero'],action=tuple(tuple(r) for r in m['action']),obj=m.get('obj','*'))


##
## ENCODING
##

def encode(x: Any,arity_bound: Optional[int]=None) -> WorkbenchDoc:
    'Document of a tabular library object'
    if isinstance(x,FinCategory): return WorkbenchDoc(kind='category',arity_bound=arity_bound,payload=x.to_json_obj())
    if isinstance(x,Rig): return WorkbenchDoc(kind='rig',arity_bound=arity_bound,payload=x.to_json_obj())
    if isinstance(x,CommMonoid): return WorkbenchDoc(kind='comm_monoid',arity_bound=arity_bound,payload=x.to_json_obj())
    if isinstance(x,CMonCategory): return WorkbenchDoc(kind='cmon_category',arity_bound=arity_bound,payload=x.to_json_obj())
    if isinstance(x,TableMulticat): return WorkbenchDoc(kind='multicat',arity_bound=arity_bound,payload={'constructor':'table','argument':x.to_json_obj()})
    if isinstance(x,TableCart): return WorkbenchDoc(kind='cart_structure',arity_bound=x.bound,payload=x.to_json_obj())
    if isinstance(x,TableModel): return WorkbenchDoc(kind='model',arity_bound=arity_bound,payload={'table':x.to_json_obj()})
    if isinstance(x,ModuleModel):
        return WorkbenchDoc(kind='model',arity_bound=arity_bound,payload={'module':{'rig':x.rig.to_json_obj(),'carrier':list(x.carrier.elements),
            'add':[list(r) for r in x.add],'zero':x.zero,'action':[list(r) for r in x.action],'obj':x.obj}})
    raise StructuralError(f'No document form for {x!r}.')

def constructed(name: str,arg: Any=None,arity_bound: Optional[int]=None) -> WorkbenchDoc:
    'Multicat document applying a built-in constructor to a tabular argument'
    payload={'constructor':name}
    if arg is not None: payload['argument']=arg if isinstance(arg,dict) else encode(arg).payload
    return WorkbenchDoc(kind='multicat',arity_bound=arity_bound,payload=payload)


##
## BUILT-IN CORPUS
##

CORPUS: Dict[str,Callable[[],WorkbenchDoc]]={
    'terminal':lambda: constructed('terminal'),
    'n_seq':lambda: constructed('from_category',fincat.ordinal(2)),
    'rig_z2':lambda: constructed('from_rig',Rig.cyclic(2)),
    'u_theory':lambda: constructed('unit'),
    'prodcat2':lambda: constructed('from_meets',fincat.ordinal(2)),
}

def example(name: str) -> WorkbenchDoc:
    if name not in CORPUS: raise StructuralError(f'No example {name!r} (known: {", ".join(sorted(CORPUS))}).')
    return CORPUS[name]()
