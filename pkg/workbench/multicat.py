'''
Unbiased symmetric multicategories in connected-arrow normal form.

A multicategory stores only its *connected* arrows (one codomain object, a family of
domain objects indexed by an arbitrary finite set of tokens). It provides four
primitives: hom-sets, identities, the symmetric action along bijections and connected
composition. Every loose arrow over a map f: I→J is derived as the family of its fiber
components (:obj:`LooseArrow`).
'''
import pydantic
from typing import Tuple,Dict,List,Optional,Iterable,Any,Union,Callable
import abc
import itertools
import functools
import networkx as nx
import sys,os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))
from common import StructuralError,LawValidationError,BoundExceeded,TheoremViolation,GG,Report,log
import finset as fs
from finset import FinSet,FinMap,token_key
import fincat
from fincat import FinCategory


##
## FAMILIES AND ARROWS
##

class ObjFamily(pydantic.BaseModel):
    'Family of objects indexed by a finite set; assign is sorted by index token.'
    model_config=pydantic.ConfigDict(frozen=True)
    index: FinSet
    assign: Tuple[Tuple[str,str],...]

    @pydantic.field_validator('assign')
    @classmethod
    def assign_sorted(cls,v): return tuple(sorted(v,key=lambda r: token_key(r[0])))

    @pydantic.model_validator(mode='after')
    def assign_total(self):
        if tuple(i for i,_ in self.assign)!=self.index.elements: raise ValueError(f'Assignment {self.assign} is not total on {self.index.render()}.')
        return self

    @staticmethod
    def of(index: Iterable[str],mapping: Dict[str,str]) -> 'ObjFamily':
        index=index if isinstance(index,FinSet) else FinSet.of(index)
        return ObjFamily(index=index,assign=tuple((i,mapping[i]) for i in index))
    @staticmethod
    def seq(objs: Iterable[str]) -> 'ObjFamily':
        'Family over {"1",…,"n"} listing objs in order'
        objs=tuple(objs)
        return ObjFamily(index=FinSet.canonical(len(objs)),assign=tuple((str(k+1),A) for k,A in enumerate(objs)))
    @staticmethod
    def empty() -> 'ObjFamily': return ObjFamily(index=FinSet(),assign=())
    def __len__(self): return len(self.index)
    def at(self,i: str) -> str: return _assign(self)[i]
    def values(self) -> Tuple[str,...]: return tuple(A for _,A in self.assign)
    def along(self,f: FinMap) -> 'ObjFamily':
        'X∘f, the family over dom f'
        if f.cod!=self.index: raise StructuralError(f'Cannot reindex family over {self.index.render()} along a map into {f.cod.render()}.')
        return ObjFamily(index=f.dom,assign=tuple((i,self.at(j)) for i,j in f.table))
    def restrict(self,sub: Iterable[str]) -> 'ObjFamily':
        sub=sub if isinstance(sub,FinSet) else FinSet.of(sub)
        return ObjFamily(index=sub,assign=tuple((i,self.at(i)) for i in sub))
    def is_canonical(self) -> bool: return self.index.is_canonical()
    def canonical(self) -> 'ObjFamily': return ObjFamily.seq(self.values())
    def render(self) -> str: return '['+','.join(f'{i}:{A}' for i,A in self.assign)+']'

@functools.lru_cache(maxsize=1<<16)
def _assign(X: ObjFamily) -> Dict[str,str]: return dict(X.assign)

def union(families: Iterable[ObjFamily]) -> ObjFamily:
    'Union of families over pairwise disjoint index sets'
    assign={}
    for X in families:
        for i,A in X.assign:
            if i in assign: raise StructuralError(f'Index token {i} appears in two families.')
            assign[i]=A
    return ObjFamily.of(FinSet.of(assign.keys()),assign)


class MultiArrow(pydantic.BaseModel):
    '''
    Connected arrow dom → cod. *data* is the implementation payload (hashable); *id* is its
    rendering, unique among the arrows with the same domain family and codomain.
    '''
    model_config=pydantic.ConfigDict(frozen=True)
    id: str
    dom: ObjFamily
    cod: str
    data: Any=pydantic.Field(default=None,exclude=True,repr=False)

    def arity(self) -> int: return len(self.dom)
    def render(self) -> str: return f'{self.id}: {self.dom.render()}→{self.cod}'


class LooseArrow(pydantic.BaseModel):
    'Loose arrow dom → cod over base: the family of its fiber components (one connected arrow per cod token).'
    model_config=pydantic.ConfigDict(frozen=True)
    base: FinMap
    dom: ObjFamily
    cod: ObjFamily
    components: Tuple[Tuple[str,MultiArrow],...]

    @pydantic.field_validator('components')
    @classmethod
    def components_sorted(cls,v): return tuple(sorted(v,key=lambda r: token_key(r[0])))

    @pydantic.model_validator(mode='after')
    def components_partition(self):
        if self.dom.index!=self.base.dom or self.cod.index!=self.base.cod: raise ValueError('Families must be indexed by the domain and codomain of the base map.')
        if tuple(j for j,_ in self.components)!=self.base.cod.elements: raise ValueError('One component per codomain token is required.')
        ff=fs.fibers(self.base)
        for j,a in self.components:
            if a.dom!=self.dom.restrict(ff[j]): raise ValueError(f'Component over {j} has domain {a.dom.render()}, expected {self.dom.restrict(ff[j]).render()}.')
            if a.cod!=self.cod.at(j): raise ValueError(f'Component over {j} has codomain {a.cod}, expected {self.cod.at(j)}.')
        return self

    @staticmethod
    def assemble(base: FinMap,dom: ObjFamily,cod: ObjFamily,components: Dict[str,MultiArrow]) -> 'LooseArrow':
        try: return LooseArrow(base=base,dom=dom,cod=cod,components=tuple(components.items()))
        except pydantic.ValidationError as e: raise StructuralError(f'Components do not form a loose arrow over {base.render()}: {e.errors()[0]["msg"]}') from None
    def at(self,j: str) -> MultiArrow: return dict(self.components)[j]
    def fiber_components(self) -> Dict[str,MultiArrow]: return dict(self.components)
    def render(self) -> str: return f'{self.base.render()}⟦'+'; '.join(f'{j}: {a.id}' for j,a in self.components)+'⟧'


##
## THE ABSTRACT MULTICATEGORY
##

class Multicat(abc.ABC):
    '''
    Symmetric multicategory over a base double prop (Pb, Tot or Bij). Subclasses implement
    the four primitives; everything else (loose arrows, checks, searches) is derived.
    *bound* is the largest arity the implementation can produce (None: unbounded).
    '''
    name: str='M'
    base: str='Pb'
    bound: Optional[int]=None
    objects: FinSet=FinSet()

    @abc.abstractmethod
    def homs(self,dom: ObjFamily,cod: str) -> List[MultiArrow]:
        'All connected arrows dom → cod'
    @abc.abstractmethod
    def identity(self,A: str,token: str='1') -> MultiArrow:
        'Identity of A, indexed by {token}'
    @abc.abstractmethod
    def act(self,alpha: MultiArrow,sigma: FinMap) -> MultiArrow:
        'α relabelled along the bijection σ: I′→I onto α.dom.index; the result has domain dom∘σ.'
    @abc.abstractmethod
    def compose_conn(self,beta: MultiArrow,comps: Dict[str,MultiArrow]) -> MultiArrow:
        'β∘(α_j) for comps j ↦ α_j (j ∈ β.dom.index) with pairwise disjoint domain indices.'

    def __repr__(self): return f'<{self.__class__.__name__} {self.name}>'

    def check_act(self,alpha: MultiArrow,sigma: FinMap):
        if sigma.cod!=alpha.dom.index or not sigma.is_bijective(): raise StructuralError(f'Relabelling {sigma.render()} is not a bijection onto {alpha.dom.index.render()}.')
    def check_compose(self,beta: MultiArrow,comps: Dict[str,MultiArrow]) -> ObjFamily:
        'Returns the domain of the composite'
        if set(comps.keys())!=set(beta.dom.index): raise StructuralError(f'Components {sorted(comps.keys())} do not match the inputs {beta.dom.index.render()} of {beta.id}.')
        for j,a in comps.items():
            if a.cod!=beta.dom.at(j): raise StructuralError(f'Component {a.id} lands in {a.cod}, input {j} of {beta.id} is {beta.dom.at(j)}.')
        return union(comps[j].dom for j in beta.dom.index)
    def check_arity(self,n: int):
        if self.bound is not None and n>self.bound: raise BoundExceeded(f'{self.name}: arity {n} exceeds the bound {self.bound}.')

    def families(self,n: int) -> Iterable[ObjFamily]:
        'All families over {"1",…,"n"}'
        for objs in itertools.product(self.objects.elements,repeat=n): yield ObjFamily.seq(objs)
    def canonical_arrows(self,bound: int) -> List[MultiArrow]:
        'Arrows with domain indexed by {"1",…,"n"}, n ≤ bound, in a deterministic order'
        return [a for n in range(bound+1) for X in self.families(n) for B in self.objects for a in self.homs(X,B)]
    def arrows_into(self,B: str,bound: int) -> List[MultiArrow]:
        return [a for n in range(bound+1) for X in self.families(n) for a in self.homs(X,B)]

    def relabel(self,alpha: MultiArrow,iso: FinMap) -> MultiArrow:
        'α moved along the bijection iso: dom index → new index'
        return self.act(alpha,fs.inverse(iso))
    def to_canonical(self,alpha: MultiArrow) -> MultiArrow:
        'α over {"1",…,"n"}, moved along the order isomorphism'
        return alpha if alpha.dom.is_canonical() else self.relabel(alpha,fs.order_iso(alpha.dom.index))
    def compose_canonical(self,beta: MultiArrow,inner: List[MultiArrow]) -> MultiArrow:
        '''
        Operadic composite of β (over {"1",…,"m"}) with inner arrows listed in input order;
        the inputs of the result are the concatenated inputs of the inner arrows.
        '''
        if len(inner)!=len(beta.dom): raise StructuralError(f'{beta.id} has {len(beta.dom)} inputs, {len(inner)} arrows given.')
        comps,offset={},0
        for j,a in zip(beta.dom.index,inner):
            a=self.to_canonical(a)
            n=len(a.dom)
            comps[j]=self.relabel(a,FinMap.of(a.dom.index,[str(offset+k) for k in range(1,n+1)],{str(k):str(offset+k) for k in range(1,n+1)}))
            offset+=n
        return self.compose_conn(beta,comps)


##
## LOOSE ARROWS
##

def identity_loose(M: Multicat,X: ObjFamily) -> LooseArrow:
    return LooseArrow.assemble(fs.identity(X.index),X,X,{i:M.identity(X.at(i),i) for i in X.index})

def compose(M: Multicat,g: LooseArrow,f: LooseArrow) -> LooseArrow:
    'g∘f for f over I→J and g over J→K; fiberwise connected composition'
    if f.cod!=g.dom: raise StructuralError(f'Cannot compose loose arrows: {f.cod.render()} ≠ {g.dom.render()}.')
    comps={k:M.compose_conn(g.at(k),{j:f.at(j) for j in g.at(k).dom.index}) for k in g.base.cod}
    return LooseArrow.assemble(fs.compose(g.base,f.base),f.dom,g.cod,comps)

def reindex_contra(M: Multicat,alpha: MultiArrow,sigma: FinMap) -> MultiArrow:
    'Contravariant reindexing of a connected arrow along a bijection σ: I′→I'
    if not sigma.is_bijective(): raise StructuralError(f'Symmetric action needs a bijection, not {sigma.render()}.')
    return M.act(alpha,sigma)

def relabel_loose(M: Multicat,a: LooseArrow,sigma: FinMap) -> LooseArrow:
    'a over p: K→J transported along the bijection σ: K′→K'
    if sigma.cod!=a.base.dom or not sigma.is_bijective(): raise StructuralError(f'{sigma.render()} is not a bijection onto {a.base.dom.render()}.')
    p=fs.compose(a.base,sigma)
    ff,gg=fs.fibers(p),fs.fibers(a.base)
    comps={j:M.act(a.at(j),fs.restrict(sigma,ff[j],gg[j])) for j in a.base.cod}
    return LooseArrow.assemble(p,a.dom.along(sigma),a.cod,comps)

def reindex_loose(M: Multicat,a: LooseArrow,l: FinMap) -> Tuple[LooseArrow,fs.PbSquare]:
    '''
    Pullback of a (over p: K→J) along l: J′→J, lifted through the pullback square of p and l;
    the result lies over the top leg apex→J′ and comes with the square.
    '''
    sq=fs.pullback(a.base,l)
    ff,gg=fs.fibers(sq.top),fs.fibers(a.base)
    comps={jj:M.act(a.at(l(jj)),fs.restrict(sq.left,ff[jj],gg[l(jj)])) for jj in l.dom}
    return LooseArrow.assemble(sq.top,a.dom.along(sq.left),a.cod.along(l),comps),sq

def loose_homs(M: Multicat,X: ObjFamily,f: FinMap,Y: ObjFamily) -> List[LooseArrow]:
    'All loose arrows X→Y over f'
    ff=fs.fibers(f)
    choices=[M.homs(X.restrict(ff[j]),Y.at(j)) for j in f.cod]
    return [LooseArrow.assemble(f,X,Y,dict(zip(f.cod.elements,cc))) for cc in itertools.product(*choices)]

def loose_out(M: Multicat,X: ObjFamily,f: FinMap) -> List[LooseArrow]:
    'All loose arrows out of X over f, with any codomain family'
    ff=fs.fibers(f)
    choices=[[a for B in M.objects for a in M.homs(X.restrict(ff[j]),B)] for j in f.cod]
    return [LooseArrow.assemble(f,X,ObjFamily.of(f.cod,{j:a.cod for j,a in zip(f.cod.elements,cc)}),dict(zip(f.cod.elements,cc))) for cc in itertools.product(*choices)]

def loose_sum(M: Multicat,arrows: List[LooseArrow]) -> LooseArrow:
    'Sum of loose arrows over the sum of their bases (k-th summand tagged "k:")'
    base=fs.sum([a.base for a in arrows])
    dom=ObjFamily.of(base.dom,{fs.tag(k,i):A for k,a in enumerate(arrows) for i,A in a.dom.assign})
    cod=ObjFamily.of(base.cod,{fs.tag(k,j):B for k,a in enumerate(arrows) for j,B in a.cod.assign})
    comps={}
    for k,a in enumerate(arrows):
        for j,c in a.components: comps[fs.tag(k,j)]=M.relabel(c,FinMap.of(c.dom.index,[fs.tag(k,i) for i in c.dom.index],{i:fs.tag(k,i) for i in c.dom.index}))
    return LooseArrow.assemble(base,dom,cod,comps)


##
## IMPLEMENTATIONS
##

class CocartesianMulticat(Multicat):
    'C_▶: an arrow (X_i)_{i∈I} → B is a family of C-arrows X_i → B, composed pointwise in C.'
    def __init__(self,C: FinCategory,name: str='C_▶'):
        self.C,self.name,self.objects=C,name,C.objects
    @staticmethod
    def _arrow(dom: ObjFamily,cod: str,family: Tuple[Tuple[str,str],...]) -> MultiArrow:
        return MultiArrow(id='⟨'+','.join(f'{i}:{c}' for i,c in family)+'⟩',dom=dom,cod=cod,data=family)
    def homs(self,dom,cod):
        choices=[self.C.hom(A,cod) for A in dom.values()]
        return [self._arrow(dom,cod,tuple(zip(dom.index.elements,cc))) for cc in itertools.product(*choices)]
    def identity(self,A,token='1'):
        return self._arrow(ObjFamily.of([token],{token:A}),A,((token,self.C.ident(A)),))
    def act(self,alpha,sigma):
        self.check_act(alpha,sigma)
        fam=dict(alpha.data)
        return self._arrow(alpha.dom.along(sigma),alpha.cod,tuple((i,fam[sigma(i)]) for i in sigma.dom))
    def compose_conn(self,beta,comps):
        dom=self.check_compose(beta,comps)
        outer=dict(beta.data)
        fam={i:self.C.comp(outer[j],c) for j,a in comps.items() for i,c in a.data}
        return self._arrow(dom,beta.cod,tuple((i,fam[i]) for i in dom.index))


class CommMonoidMulticat(Multicat):
    'Discrete multicategory of a commutative monoid: exactly one arrow X → ΣX.'
    def __init__(self,mon: 'CommMonoid',name: str='Mon_▶'):
        self.mon,self.name,self.objects=mon,name,mon.carrier
    def _arrow(self,dom,cod): return MultiArrow(id='Σ',dom=dom,cod=cod)
    def homs(self,dom,cod): return [self._arrow(dom,cod)] if self.mon.total(dom.values())==cod else []
    def identity(self,A,token='1'): return self._arrow(ObjFamily.of([token],{token:A}),A)
    def act(self,alpha,sigma):
        self.check_act(alpha,sigma)
        return self._arrow(alpha.dom.along(sigma),alpha.cod)
    def compose_conn(self,beta,comps): return self._arrow(self.check_compose(beta,comps),beta.cod)


class TableMulticat(Multicat):
    '''
    Multicategory given by finite tables up to an arity bound. Table arrows live over
    {"1",…,"n"}; an arrow over another index set is a table arrow transported along the
    order isomorphism of that set. Composition tables are operadic (inputs concatenated in
    input order); symmetry tables give α·τ with domain dom(α)∘τ for permutations τ.
    '''
    def __init__(self,objects: Iterable[str],arrows: Dict[str,Tuple[Tuple[str,...],str]],identities: Dict[str,str],
            symmetry: Dict[Tuple[str,Tuple[int,...]],str],composition: Dict[Tuple[str,Tuple[str,...]],str],bound: int,name: str='T',base: str='Pb'):
        self.objects,self.name,self.bound,self.base=FinSet.of(objects),name,bound,base
        self.arrows,self.identities,self.symmetry,self.composition=dict(arrows),dict(identities),dict(symmetry),dict(composition)
        self.by_type={}
        for z,(dom,cod) in self.arrows.items():
            if len(dom)>bound: raise StructuralError(f'Arrow {z} has arity {len(dom)} above the table bound {bound}.')
            if cod not in self.objects or not set(dom)<=set(self.objects): raise StructuralError(f'Arrow {z} mentions objects outside {self.objects.render()}.')
            self.by_type.setdefault((dom,cod),[]).append(z)
        self._check_tables()

    def _check_tables(self):
        for A in self.objects:
            z=self.identities.get(A)
            if z not in self.arrows or self.arrows[z]!=((A,),A): raise StructuralError(f'Identity of {A} is missing or is not a unary endo-arrow.')
        for z,(dom,cod) in self.arrows.items():
            for tau in itertools.permutations(range(1,len(dom)+1)):
                w=self.symmetry.get((z,tau))
                if w is None: raise StructuralError(f'Symmetry entry for {z} and {tau} is missing.')
                if self.arrows.get(w)!=(tuple(dom[t-1] for t in tau),cod): raise StructuralError(f'Symmetry entry {z}·{tau}={w} has the wrong type.')
        into={}
        for z,(dom,cod) in self.arrows.items(): into.setdefault(cod,[]).append(z)
        for b,(dom,cod) in self.arrows.items():
            for inner in _tuples([into.get(Y,[]) for Y in dom],lambda z: len(self.arrows[z][0]),self.bound):
                w=self.composition.get((b,inner))
                if w is None: raise StructuralError(f'Composition entry {b}∘{inner} is missing.')
                if self.arrows.get(w)!=(sum((self.arrows[z][0] for z in inner),()),cod): raise StructuralError(f'Composition entry {b}∘{inner}={w} has the wrong type.')

    def _arrow(self,z: str,dom: ObjFamily) -> MultiArrow: return MultiArrow(id=z,dom=dom,cod=self.arrows[z][1],data=z)
    def homs(self,dom,cod):
        self.check_arity(len(dom))
        return [self._arrow(z,dom) for z in self.by_type.get((dom.values(),cod),[])]
    def identity(self,A,token='1'): return self._arrow(self.identities[A],ObjFamily.of([token],{token:A}))
    def act(self,alpha,sigma):
        self.check_act(alpha,sigma)
        self.check_arity(len(sigma.dom))
        rho,rho2=fs.order_iso(alpha.dom.index),fs.order_iso(sigma.dom)
        tau=fs.compose(rho,fs.compose(sigma,fs.inverse(rho2)))
        return self._arrow(self.symmetry[(alpha.data,tuple(int(tau(str(k))) for k in range(1,len(tau.dom)+1)))],alpha.dom.along(sigma))
    def compose_conn(self,beta,comps):
        dom=self.check_compose(beta,comps)
        self.check_arity(len(dom))
        order=[j for j in beta.dom.index]
        z=self.composition.get((beta.data,tuple(comps[j].data for j in order)))
        if z is None: raise BoundExceeded(f'{self.name}: composite of {beta.id} exceeds the table bound {self.bound}.')
        concat=[i for j in order for i in comps[j].dom.index]
        tau=[concat.index(i)+1 for i in dom.index]
        return self._arrow(self.symmetry[(z,tuple(tau))],dom)

    def to_json_obj(self) -> dict:
        return {'name':self.name,'base':self.base,'bound':self.bound,'objects':list(self.objects.elements),
            'arrows':[{'id':z,'dom':{'index':[str(k+1) for k in range(len(d))],'assign':{str(k+1):A for k,A in enumerate(d)}},'cod':c} for z,(d,c) in self.arrows.items()],
            'identities':self.identities,
            'symmetry':[{'arrow':z,'perm':list(t),'result':w} for (z,t),w in self.symmetry.items()],
            'compose':[{'outer':b,'inner':list(ii),'result':w} for (b,ii),w in self.composition.items()]}
    @staticmethod
    def from_json_obj(d: dict,bound: Optional[int]=None) -> 'TableMulticat':
        'The table bound is taken from the document, else *bound*, else the largest arity listed'
        arrows={}
        for a in d['arrows']:
            idx=a['dom']['index']
            if idx!=[str(k+1) for k in range(len(idx))]: raise StructuralError(f'Arrow {a["id"]}: table arrows must be indexed by "1",…,"n".')
            if a['id'] in arrows: raise StructuralError(f'Duplicate arrow id {a["id"]}.')
            if set(a['dom']['assign'])!=set(idx): raise StructuralError(f'Arrow {a["id"]}: assign covers {sorted(a["dom"]["assign"])}, the index is {idx}.')
            arrows[a['id']]=(tuple(a['dom']['assign'][i] for i in idx),a['cod'])
        return TableMulticat(d['objects'],arrows,d['identities'],{(s['arrow'],tuple(s['perm'])):s['result'] for s in d['symmetry']},
            {(c['outer'],tuple(c['inner'])):c['result'] for c in d['compose']},bound=d.get('bound',bound if bound is not None else max((len(a['dom']['index']) for a in d['arrows']),default=0)),name=d.get('name','T'),base=d.get('base','Pb'))


def _tuples(choices: List[List[Any]],arity: Callable[[Any],int],room: int) -> Iterable[Tuple[Any,...]]:
    'Tuples picking one element per list, with total arity ≤ room'
    if not choices:
        yield ()
        return
    for z in choices[0]:
        n=arity(z)
        if n>room: continue
        for rest in _tuples(choices[1:],arity,room-n): yield (z,)+rest

def composable(M: Multicat,beta: MultiArrow,bound: int,into: Dict[str,List[MultiArrow]]) -> Iterable[Tuple[MultiArrow,...]]:
    'Lists of canonical arrows that can be plugged into β, with total arity ≤ bound'
    yield from _tuples([into.get(Y,[]) for Y in beta.dom.values()],MultiArrow.arity,bound)


##
## COMMUTATIVE MONOIDS AND RIGS
##

class CommMonoid(pydantic.BaseModel):
    model_config=pydantic.ConfigDict(frozen=True)
    carrier: FinSet
    add: Tuple[Tuple[str,str,str],...]
    zero: str

    @pydantic.field_validator('add')
    @classmethod
    def add_sorted(cls,v): return tuple(sorted(v))
    @pydantic.model_validator(mode='after')
    def add_total(self):
        keys=[(x,y) for x,y,_ in self.add]
        if len(set(keys))!=len(keys) or set(keys)!=set(itertools.product(self.carrier,self.carrier)): raise ValueError('Addition table must have exactly one entry per pair of elements.')
        if not {z for _,_,z in self.add}<=set(self.carrier) or self.zero not in self.carrier: raise ValueError('Addition or zero leaves the carrier.')
        return self

    @staticmethod
    def of(carrier: Iterable[str],plus: Callable[[str,str],str],zero: str) -> 'CommMonoid':
        carrier=FinSet.of(carrier)
        return CommMonoid(carrier=carrier,add=tuple((x,y,plus(x,y)) for x in carrier for y in carrier),zero=zero)
    @staticmethod
    def cyclic(n: int) -> 'CommMonoid':
        return CommMonoid.of([str(k) for k in range(n)],lambda x,y: str((int(x)+int(y))%n),'0')
    def plus(self,x: str,y: str) -> str: return _table(self.add)[(x,y)]
    def total(self,xs: Iterable[str]) -> str: return functools.reduce(self.plus,xs,self.zero)
    def check_laws(self) -> Report:
        rep=Report(subject='commutative monoid laws',bound=0)
        C=self.carrier.elements
        for x in C: rep.expect(self.plus(self.zero,x)==x,'unit',{'x':x},f'0+{x} ≠ {x}')
        for x,y in itertools.product(C,C): rep.expect(self.plus(x,y)==self.plus(y,x),'commutativity',{'x':x,'y':y},f'{x}+{y} ≠ {y}+{x}')
        for x,y,z in itertools.product(C,C,C): rep.expect(self.plus(self.plus(x,y),z)==self.plus(x,self.plus(y,z)),'associativity',{'x':x,'y':y,'z':z},'(x+y)+z ≠ x+(y+z)')
        return rep.finish()
    def validated(self) -> 'CommMonoid':
        rep=self.check_laws()
        if not rep.ok: raise LawValidationError(f'Not a commutative monoid: {rep.violations[0].law} fails at {rep.violations[0].instance}.')
        return self
    def to_json_obj(self) -> dict: return {'carrier':list(self.carrier.elements),'add':[list(r) for r in self.add],'zero':self.zero}
    @staticmethod
    def from_json_obj(d: dict) -> 'CommMonoid': return CommMonoid(carrier=FinSet.of(d['carrier']),add=tuple(tuple(r) for r in d['add']),zero=d['zero'])

@functools.lru_cache(maxsize=1024)
def _table(rows: Tuple[Tuple[str,str,str],...]) -> Dict[Tuple[str,str],str]: return {(x,y):z for x,y,z in rows}


class Rig(pydantic.BaseModel):
    'Finite commutative-additive rig (semiring with 0 and 1)'
    model_config=pydantic.ConfigDict(frozen=True)
    carrier: FinSet
    add: Tuple[Tuple[str,str,str],...]
    mul: Tuple[Tuple[str,str,str],...]
    zero: str
    one: str

    @pydantic.field_validator('add','mul')
    @classmethod
    def rows_sorted(cls,v): return tuple(sorted(v))
    @pydantic.model_validator(mode='after')
    def tables_total(self):
        pairs=set(itertools.product(self.carrier,self.carrier))
        for name,rows in (('add',self.add),('mul',self.mul)):
            keys=[(x,y) for x,y,_ in rows]
            if len(set(keys))!=len(keys) or set(keys)!=pairs: raise ValueError(f'Table {name} must have exactly one entry per pair of elements.')
            if not {z for _,_,z in rows}<=set(self.carrier): raise ValueError(f'Table {name} leaves the carrier.')
        if self.zero not in self.carrier or self.one not in self.carrier: raise ValueError('0 and 1 must be elements of the carrier.')
        return self

    @staticmethod
    def of(carrier: Iterable[str],plus: Callable[[str,str],str],times: Callable[[str,str],str],zero: str='0',one: str='1') -> 'Rig':
        carrier=FinSet.of(carrier)
        return Rig(carrier=carrier,add=tuple((x,y,plus(x,y)) for x in carrier for y in carrier),mul=tuple((x,y,times(x,y)) for x in carrier for y in carrier),zero=zero,one=one)
    @staticmethod
    def cyclic(n: int) -> 'Rig':
        'Z/n'
        return Rig.of([str(k) for k in range(n)],lambda x,y: str((int(x)+int(y))%n),lambda x,y: str((int(x)*int(y))%n))
    @staticmethod
    def boolean() -> 'Rig':
        'Booleans with "or" as addition and "and" as multiplication'
        return Rig.of(['0','1'],lambda x,y: str(max(int(x),int(y))),lambda x,y: str(min(int(x),int(y))))
    def plus(self,x: str,y: str) -> str: return _table(self.add)[(x,y)]
    def times(self,x: str,y: str) -> str: return _table(self.mul)[(x,y)]
    def total(self,xs: Iterable[str]) -> str: return functools.reduce(self.plus,xs,self.zero)
    def additive(self) -> CommMonoid: return CommMonoid(carrier=self.carrier,add=self.add,zero=self.zero)
    def check_laws(self) -> Report:
        rep=self.additive().check_laws()
        rep.subject='rig laws'
        C=self.carrier.elements
        for x in C:
            rep.expect(self.times(self.one,x)==x and self.times(x,self.one)==x,'mul-unit',{'x':x},f'1·{x} or {x}·1 ≠ {x}')
            rep.expect(self.times(self.zero,x)==self.zero and self.times(x,self.zero)==self.zero,'absorption',{'x':x},f'0·{x} or {x}·0 ≠ 0')
        for x,y,z in itertools.product(C,C,C):
            rep.expect(self.times(self.times(x,y),z)==self.times(x,self.times(y,z)),'mul-associativity',{'x':x,'y':y,'z':z},'(xy)z ≠ x(yz)')
            rep.expect(self.times(x,self.plus(y,z))==self.plus(self.times(x,y),self.times(x,z)),'left-distributivity',{'x':x,'y':y,'z':z},'x(y+z) ≠ xy+xz')
            rep.expect(self.times(self.plus(y,z),x)==self.plus(self.times(y,x),self.times(z,x)),'right-distributivity',{'x':x,'y':y,'z':z},'(y+z)x ≠ yx+zx')
        return rep.finish()
    def validated(self) -> 'Rig':
        rep=self.check_laws()
        if not rep.ok: raise LawValidationError(f'Not a rig: {rep.violations[0].law} fails at {rep.violations[0].instance}.')
        return self
    def to_json_obj(self) -> dict:
        return {'carrier':list(self.carrier.elements),'add':[list(r) for r in self.add],'mul':[list(r) for r in self.mul],'zero':self.zero,'one':self.one}
    @staticmethod
    def from_json_obj(d: dict) -> 'Rig':
        return Rig(carrier=FinSet.of(d['carrier']),add=tuple(tuple(r) for r in d['add']),mul=tuple(tuple(r) for r in d['mul']),zero=d['zero'],one=d['one'])


##
## CONSTRUCTORS
##

def from_category(C: FinCategory,name: str='C_▶') -> CocartesianMulticat:
    return CocartesianMulticat(C.validated(),name=name)

def terminal() -> CocartesianMulticat:
    'The terminal multicategory 1_▶: one object, one arrow of each arity'
    return CocartesianMulticat(fincat.terminal(),name='1_▶')

def unit(bound: Optional[int]=None) -> TableMulticat:
    'U: one object and its identity, nothing else (the table is complete at every bound)'
    return TableMulticat(['*'],{'id':(('*',),'*')},{'*':'id'},{('id',(1,)):'id'},{('id',('id',)):'id'},bound=GG.resolve(bound),name='U')

def from_comm_monoid(mon: CommMonoid,name: str='Mon_▶') -> CommMonoidMulticat:
    return CommMonoidMulticat(mon.validated(),name=name)

def rig_category(R: Rig) -> FinCategory:
    'The multiplicative monoid of R as a one-object category'
    return fincat.from_monoid(R.carrier,R.times,R.one)

def from_rig(R: Rig):
    'R_▶ with covariant reindexing by summation over fibers; returns (multicategory, cartesian structure)'
    import cartesian
    R=R.validated()
    M=CocartesianMulticat(rig_category(R),name='R_▶')
    return M,cartesian.RigCart(M,R)


##
## VALIDATION
##

def validate(M: Multicat,bound: Optional[int]=None) -> Report:
    '''
    Exhaustive check of the multicategory axioms on arrows over {"1",…,"n"}, n ≤ bound:
    unit laws, associativity, functoriality of the symmetric action and equivariance of
    composition under relabelling of inputs and of blocks.
    '''
    bound=GG.resolve(bound)
    rep=Report(subject=f'multicategory laws of {M.name}',bound=bound)
    arrows=M.canonical_arrows(bound)
    into={}
    for a in arrows: into.setdefault(a.cod,[]).append(a)
    for a in arrows:
        rep.attempt('left-unit',{'arrow':a},lambda: M.compose_conn(M.identity(a.cod,'1'),{'1':a})==a,'id∘α ≠ α')
        rep.attempt('right-unit',{'arrow':a},lambda: M.compose_conn(a,{i:M.identity(a.dom.at(i),i) for i in a.dom.index})==a,'α∘(id) ≠ α')
        perms=list(fs.permutations(a.dom.index))
        rep.attempt('symmetry-identity',{'arrow':a},lambda: M.act(a,fs.identity(a.dom.index))==a,'α·id ≠ α')
        for s,t in itertools.product(perms,perms):
            rep.attempt('symmetry-functoriality',{'arrow':a,'sigma':s,'tau':t},lambda: M.act(M.act(a,s),t)==M.act(a,fs.compose(s,t)),'(α·σ)·τ ≠ α·(στ)')
    for b in arrows:
        for inner in composable(M,b,bound,into):
            try: c=M.compose_canonical(b,list(inner))
            except BoundExceeded as e:
                rep.skip('associativity',str(e))
                continue
            for deeper in itertools.product(*[list(composable(M,a,bound,into)) for a in inner]):
                flat=[x for d in deeper for x in d]
                if sum(x.arity() for x in flat)>bound: continue
                rep.attempt('associativity',{'outer':b,'middle':list(inner),'inner':flat},
                    lambda: M.compose_canonical(c,flat)==M.compose_canonical(b,[M.compose_canonical(a,list(d)) for a,d in zip(inner,deeper)]),
                    '(β∘α)∘γ ≠ β∘(α∘γ)')
            _check_equivariance(M,rep,b,list(inner),c)
    return rep.finish()

def _check_equivariance(M: Multicat,rep: Report,b: MultiArrow,inner: List[MultiArrow],c: MultiArrow):
    'act(β∘(α_j),ψ) = (β·φ)∘(α_φ(j)·ψ|) for all ψ ∈ Sym(I), φ ∈ Sym(J)'
    I,J=c.dom.index,b.dom.index
    block,offset={},0
    for j,a in zip(J,inner):
        for k in range(a.arity()): block[str(offset+k+1)]=j
        offset+=a.arity()
    f=FinMap.of(I,J,block)
    comps={}
    for j,a in zip(J,inner):
        a=M.to_canonical(a)
        sub=fs.fiber(f,j)
        comps[j]=M.relabel(a,FinMap.of(a.dom.index,sub,dict(zip(a.dom.index.elements,sub.elements))))
    for psi in fs.permutations(I):
        for phi in fs.permutations(J):
            def rhs():
                f2=fs.compose(fs.inverse(phi),fs.compose(f,psi))
                ff,gg=fs.fibers(f2),fs.fibers(f)
                return M.compose_conn(M.act(b,phi),{j2:M.act(comps[phi(j2)],fs.restrict(psi,ff[j2],gg[phi(j2)])) for j2 in J})
            rep.attempt('equivariance',{'outer':b,'inner':inner,'psi':psi,'phi':phi},lambda: M.act(c,psi)==rhs(),'(β∘α)·ψ ≠ (β·φ)∘(α·ψ)')


##
## ALGEBRAS (DISCRETE OPFIBRATIONS)
##

def _out_count(M: Multicat,X: ObjFamily) -> int: return sum(len(M.homs(X,B)) for B in M.objects)

def is_algebra(M: Multicat,bound: Optional[int]=None) -> bool:
    'Exactly one loose arrow out of every family over every map, within the bound'
    bound=GG.resolve(bound)
    counts={}
    for n in range(bound+1):
        for X in M.families(n):
            for J in fs.canonical_sets(bound):
                for f in fs.all_maps(X.index,J):
                    total=1
                    for j,ff in fs.fibers(f).items():
                        key=X.restrict(ff)
                        if key not in counts: counts[key]=_out_count(M,key)
                        total*=counts[key]
                    if total!=1:
                        log.debug(f'{M.name}: {total} loose arrows out of {X.render()} over {f.render()}')
                        return False
    return True

def push_family(M: Multicat,X: ObjFamily,f: FinMap) -> ObjFamily:
    'Codomain of the unique loose arrow out of X over f (M an algebra)'
    ff=fs.fibers(f)
    cod={}
    for j in f.cod:
        out=[B for B in M.objects for _ in M.homs(X.restrict(ff[j]),B)]
        if len(out)!=1: raise StructuralError(f'{M.name} has {len(out)} arrows out of {X.restrict(ff[j]).render()}; not an algebra.')
        cod[j]=out[0]
    return ObjFamily.of(f.cod,cod)

def extract_monoid(M: Multicat) -> CommMonoid:
    'The commutative monoid an algebra comes from: 0 is the target of the nullary arrow, x+y that of the binary one'
    zero=push_family(M,ObjFamily.empty(),fs.constant(FinSet())).at('*')
    add=tuple((x,y,push_family(M,ObjFamily.seq([x,y]),fs.constant(FinSet.canonical(2))).at('*')) for x in M.objects for y in M.objects)
    return CommMonoid(carrier=M.objects,add=add,zero=zero).validated()

def check_go(M: Multicat,bound: Optional[int]=None) -> Report:
    '''
    Reindexing f ↦ f_! of an algebra: unit, composites, and compatibility with every
    pullback of f along l: J′→J, (f_!X)∘l = top_!(X∘left).
    '''
    bound=GG.resolve(bound)
    rep=Report(subject=f'algebra reindexing of {M.name}',bound=bound)
    for n in range(bound+1):
        for X in M.families(n):
            rep.expect(push_family(M,X,fs.identity(X.index))==X,'go-unit',{'X':X},'id_!X ≠ X')
            for J in fs.canonical_sets(bound):
                for f in fs.all_maps(X.index,J):
                    Y=push_family(M,X,f)
                    for K in fs.canonical_sets(bound):
                        for g in fs.all_maps(J,K):
                            rep.expect(push_family(M,Y,g)==push_family(M,X,fs.compose(g,f)),'go-composite',{'X':X,'f':f,'g':g},'g_!(f_!X) ≠ (gf)_!X')
                        for l in fs.all_maps(K,J):
                            sq=fs.pullback(f,l)
                            rep.expect(Y.along(l)==push_family(M,X.along(sq.left),sq.top),'go-pullback',{'X':X,'f':f,'l':l},'(f_!X)∘l ≠ top_!(X∘left)')
    return rep.finish()


##
## REPRESENTABILITY
##

def _opcartesian(M: Multicat,u: LooseArrow) -> bool:
    'Precomposition with u is a bijection hom(P,B) → hom(X,B) for every object B'
    comps=u.fiber_components()
    for B in M.objects:
        target=M.homs(u.dom,B)
        image=[M.compose_conn(t,comps) for t in M.homs(u.cod,B)]
        if len(image)!=len(target) or set(image)!=set(target): return False
    return True

def is_opcartesian(M: Multicat,u: LooseArrow,bound: Optional[int]=None,rep: Optional[Report]=None) -> bool:
    '''
    u opcartesian and stable: every reindexing along l: J′→J (|J′|, apex ≤ bound) is opcartesian
    as well. A u whose composites leave the bound is not opcartesian.
    '''
    bound=GG.resolve(bound)
    try:
        if not _opcartesian(M,u): return False
    except BoundExceeded as e:
        if rep is not None: rep.skip('opcartesian',str(e))
        return False
    for J2 in fs.canonical_sets(bound):
        for l in fs.all_maps(J2,u.base.cod):
            sq=fs.pullback(u.base,l)
            if len(sq.apex)>bound:
                if rep is not None: rep.skip('opcartesian-stability',f'apex of size {len(sq.apex)}')
                continue
            try:
                if not _opcartesian(M,reindex_loose(M,u,l)[0]): return False
            except BoundExceeded as e:
                if rep is not None: rep.skip('opcartesian-stability',str(e))
    return True

def find_opcartesian(M: Multicat,X: ObjFamily,f: FinMap,bound: Optional[int]=None,rep: Optional[Report]=None) -> Optional[LooseArrow]:
    'First stable opcartesian loose arrow out of X over f (codomain families in canonical order), or None'
    for objs in itertools.product(M.objects.elements,repeat=len(f.cod)):
        P=ObjFamily.of(f.cod,dict(zip(f.cod.elements,objs)))
        for u in loose_homs(M,X,f,P):
            if is_opcartesian(M,u,bound,rep): return u
    return None

def is_representable(M: Multicat,bound: Optional[int]=None) -> Report:
    bound=GG.resolve(bound)
    rep=Report(subject=f'representability of {M.name}',bound=bound)
    for n in range(bound+1):
        for X in M.families(n):
            for J in fs.canonical_sets(bound):
                for f in fs.all_maps(X.index,J):
                    rep.attempt('opcartesian',{'X':X,'f':f},lambda: find_opcartesian(M,X,f,bound,rep) is not None,'no stable opcartesian arrow out of X over f')
    return rep.finish()


##
## ISOMORPHISM CLASSES, UNARY PART, RIGIDITY
##

def unary_category(M: Multicat) -> FinCategory:
    'The category formed by the unary arrows of M'
    def tok(a): return f'{a.dom.at("1")}|{a.id}|{a.cod}'
    arrows={tok(a):a for A in M.objects for B in M.objects for a in M.homs(ObjFamily.of(['1'],{'1':A}),B)}
    return fincat.from_arrows(M.objects,[(t,a.dom.at('1'),a.cod) for t,a in arrows.items()],{A:tok(M.identity(A)) for A in M.objects},
        lambda g,f: tok(M.compose_conn(arrows[g],{'1':arrows[f]})))

def iso_classes(C: FinCategory) -> List[Tuple[str,...]]:
    'Isomorphism classes of objects, each sorted, in order of their least element'
    G=nx.Graph()
    G.add_nodes_from(C.objects)
    G.add_edges_from((C.src(a),C.tgt(a)) for a in C.arrow_ids() if C.is_iso(a))
    return sorted((tuple(sorted(c,key=token_key)) for c in nx.connected_components(G)),key=lambda c: token_key(c[0]))

class IsoQuotient(pydantic.BaseModel):
    'Connected arrows of a non-representable multicategory up to composition with unary isomorphisms'
    model_config=pydantic.ConfigDict(frozen=True)
    classes: Tuple[Tuple[str,...],...]
    arrow_classes: Tuple[Tuple[str,Tuple[str,...]],...]

def burnside(M: Multicat,bound: Optional[int]=None) -> Union[CommMonoidMulticat,IsoQuotient]:
    '''
    For a representable M: the commutative monoid of isomorphism classes of objects under
    tensor (each class named by its least object). Otherwise the iso-class quotient as data.
    '''
    bound=GG.resolve(bound)
    U=unary_category(M)
    classes=iso_classes(U)
    rep_of={A:c[0] for c in classes for A in c}
    if is_representable(M,bound).ok:
        def tensor(objs):
            u=find_opcartesian(M,ObjFamily.seq(objs),fs.constant(FinSet.canonical(len(objs))),bound)
            return rep_of[u.cod.at('*')]
        carrier=[c[0] for c in classes]
        mon=CommMonoid.of(carrier,lambda x,y: tensor([x,y]),tensor([]))
        log.info(f'burnside of {M.name}: {len(carrier)} classes')
        return from_comm_monoid(mon,name=f'B({M.name})')
    isos=[a for a in U.arrow_ids() if U.is_iso(a)]
    G=nx.Graph()
    for n in range(bound+1):
        for X in M.families(n):
            for B in M.objects:
                for a in M.homs(X,B):
                    G.add_node(a)
                    for v in isos:
                        if U.src(v)!=B: continue
                        w=M.compose_conn(_unary(M,U,v),{'1':a})
                        G.add_edge(a,w)
                    for i in X.index:
                        for v in isos:
                            if U.tgt(v)!=X.at(i): continue
                            comps={k:(M.relabel(_unary(M,U,v),FinMap.of(['1'],[k],{'1':k})) if k==i else M.identity(X.at(k),k)) for k in X.index}
                            G.add_edge(a,M.compose_conn(a,comps))
    arrow_classes=sorted(tuple(sorted(x.render() for x in c)) for c in nx.connected_components(G))
    return IsoQuotient(classes=tuple(classes),arrow_classes=tuple((c[0],c) for c in arrow_classes))

def _unary(M: Multicat,U: FinCategory,v: str) -> MultiArrow:
    A,B=U.src(v),U.tgt(v)
    return next(a for a in M.homs(ObjFamily.of(['1'],{'1':A}),B) if f'{A}|{a.id}|{B}'==v)


class OrderedLift(pydantic.BaseModel):
    'A choice of total order on the inputs of every arrow, compatible with the action and composition'
    model_config=pydantic.ConfigDict(frozen=True)
    orders: Tuple[Tuple[str,Tuple[str,...]],...]

class SymmetryWitness(pydantic.BaseModel):
    'An arrow fixed by a non-identity permutation of its inputs'
    model_config=pydantic.ConfigDict(frozen=True)
    arrow: str
    permutation: FinMap

def plain_structure(M: Multicat,bound: Optional[int]=None) -> Union[OrderedLift,SymmetryWitness]:
    '''
    Factorization of M through Tot. Returns a witness when some arrow has a non-trivial
    stabilizer. Otherwise one arrow per orbit of the symmetric action is declared plain
    (inputs in listed order) so that plain arrows are closed under composition, and its
    order is transported to the rest of the orbit.
    '''
    bound=GG.resolve(bound)
    arrows=M.canonical_arrows(bound)
    orbits,orbit_of={},{}
    for a in sorted(arrows,key=lambda a: (a.arity(),a.render())):
        for s in fs.permutations(a.dom.index):
            if not s.is_identity() and M.act(a,s)==a: return SymmetryWitness(arrow=a.render(),permutation=s)
        if a in orbit_of: continue
        orbits[a]=sorted({M.act(a,s) for s in fs.permutations(a.dom.index)},key=MultiArrow.render)
        for b in orbits[a]: orbit_of[b]=a
    plain=_plain_search(M,bound,orbits,orbit_of,{})
    if plain is None: raise TheoremViolation(f'{M.name} is rigid up to arity {bound} but no choice of plain arrows is closed under composition.')
    orders={}
    for p in plain.values():
        for s in fs.permutations(p.dom.index):
            inv=fs.inverse(s)
            orders[M.act(p,s)]=tuple(inv(i) for i in p.dom.index)
    into={}
    for a in arrows: into.setdefault(a.cod,[]).append(a)
    for b in arrows:
        for inner in composable(M,b,bound,into):
            c=M.compose_canonical(b,list(inner))
            offsets,n={},0
            for j,a in zip(b.dom.index,inner):
                offsets[j]=n
                n+=a.arity()
            glued=tuple(str(offsets[j]+int(i)) for j in orders[b] for a in [inner[b.dom.index.position(j)]] for i in orders[a])
            if orders[c]!=glued: raise TheoremViolation(f'{M.name}: orders do not glue at {b.id}∘{[a.id for a in inner]}.')
    log.info(f'{M.name}: plain structure on {len(plain)} orbits up to arity {bound}')
    return OrderedLift(orders=tuple(sorted((a.render(),o) for a,o in orders.items())))

def _plain_closure(M: Multicat,bound: int,orbit_of: Dict[MultiArrow,MultiArrow],plain: Dict[MultiArrow,MultiArrow]) -> Optional[Dict[MultiArrow,MultiArrow]]:
    'Close a partial choice of plain arrows (orbit ↦ arrow) under composition; None on a clash'
    plain=dict(plain)
    grown=True
    while grown:
        grown=False
        into={}
        for a in plain.values(): into.setdefault(a.cod,[]).append(a)
        for b in list(plain.values()):
            for inner in composable(M,b,bound,into):
                c=M.compose_canonical(b,list(inner))
                k=orbit_of[c]
                if k not in plain:
                    plain[k]=c
                    grown=True
                elif plain[k]!=c: return None
    return plain

def _plain_search(M: Multicat,bound: int,orbits: Dict[MultiArrow,List[MultiArrow]],orbit_of: Dict[MultiArrow,MultiArrow],
        plain: Dict[MultiArrow,MultiArrow]) -> Optional[Dict[MultiArrow,MultiArrow]]:
    plain=_plain_closure(M,bound,orbit_of,plain)
    if plain is None: return None
    k=next((k for k in orbits if k not in plain),None)
    if k is None: return plain
    for p in orbits[k]:
        found=_plain_search(M,bound,orbits,orbit_of,{**plain,k:p})
        if found is not None: return found
    return None


##
## TABULATION
##

def tabulate(M: Multicat,bound: Optional[int]=None,name: Optional[str]=None) -> TableMulticat:
    'M restricted to arities ≤ bound, as tables over {"1",…,"n"}'
    bound=GG.resolve(bound)
    arrows=M.canonical_arrows(bound)
    def tok(a): return f'{a.id}@{fincat.fam_token(a.dom.values())}→{a.cod}'
    names={a:tok(a) for a in arrows}
    if len(set(names.values()))!=len(names): raise StructuralError(f'{M.name}: arrow ids are not unique per type; cannot tabulate.')
    into={}
    for a in arrows: into.setdefault(a.cod,[]).append(a)
    sym={(names[a],tuple(int(s(str(k))) for k in range(1,a.arity()+1))):names[M.act(a,s)] for a in arrows for s in fs.permutations(a.dom.index)}
    comp={(names[b],tuple(names[x] for x in inner)):names[M.compose_canonical(b,list(inner))] for b in arrows for inner in composable(M,b,bound,into)}
    return TableMulticat(M.objects,{names[a]:(a.dom.values(),a.cod) for a in arrows},{A:names[M.identity(A)] for A in M.objects},sym,comp,
        bound=bound,name=name or M.name,base=M.base)
