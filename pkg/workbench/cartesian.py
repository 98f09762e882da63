'''
Cartesian structure on symmetric multicategories.

Enhanced spans give the multicategory M^cart (tight leg f: K→I, connected arrow over K)
with the monad structure η, μ. A cartesian structure Γ is covariant reindexing f_!α; it is
checked twice, as unit/functoriality/Frobenius/Beck-Chevalley/tailing laws and as the
algebra equations of the monad, and the two verdicts are compared.
'''
import pydantic
from typing import Tuple,Dict,List,Optional,Iterable,Any,Callable
import abc
import itertools
import functools
import sys,os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))
from common import StructuralError,LawValidationError,BoundExceeded,GG,Report,log
import finset as fs
from finset import FinSet,FinMap,token_key
import fincat
from fincat import FinCategory
import multicat
from multicat import Multicat,MultiArrow,LooseArrow,ObjFamily,CocartesianMulticat,Rig


##
## ENHANCED SPANS AND THE MONAD
##

class EnhancedSpan(pydantic.BaseModel):
    'Connected arrow of M^cart: tight f: K→I and α: Y∘f → B, apex K = {"1",…,"k"}'
    model_config=pydantic.ConfigDict(frozen=True)
    tight: FinMap
    loose: MultiArrow
    def render(self) -> str: return f'{self.tight.render()}·{self.loose.id}'

def _canonical_span(M: Multicat,f: FinMap,alpha: MultiArrow) -> Tuple[FinMap,MultiArrow]:
    'Least representative over {"1",…,"k"} of (f,α) under relabelling of the apex'
    if not f.dom.is_canonical():
        rho=fs.order_iso(f.dom)
        f,alpha=fs.compose(f,fs.inverse(rho)),M.relabel(alpha,rho)
    perms=list(fs.permutations(f.dom))
    keys=[tuple(token_key(j) for _,j in fs.compose(f,s).table) for s in perms]
    least=min(keys)
    cands=[(fs.compose(f,s),M.act(alpha,s)) for s,k in zip(perms,keys) if k==least]
    return min(cands,key=lambda c: c[1].id)


class EspanMulticat(Multicat):
    '''
    M^cart, truncated to apexes of size ≤ bound; composites with a larger apex raise
    BoundExceeded.
    '''
    def __init__(self,M: Multicat,bound: Optional[int]=None):
        b=GG.resolve(bound)
        self.M,self.apex_bound=M,(b if M.bound is None else min(b,M.bound))
        self.name,self.objects,self.base,self.bound=f'{M.name}^cart',M.objects,'Pb',None
        self._homs={}
    def arrow(self,dom: ObjFamily,f: FinMap,alpha: MultiArrow) -> MultiArrow:
        if f.cod!=dom.index or alpha.dom!=dom.along(f): raise StructuralError(f'{alpha.render()} does not lie over {dom.render()} along {f.render()}.')
        if len(f.dom)>self.apex_bound: raise BoundExceeded(f'{self.name}: apex of size {len(f.dom)} exceeds the bound {self.apex_bound}.')
        f,alpha=_canonical_span(self.M,f,alpha)
        e=EnhancedSpan(tight=f,loose=alpha)
        return MultiArrow(id=e.render(),dom=dom,cod=alpha.cod,data=e)
    def homs(self,dom,cod):
        if (dom,cod) not in self._homs:
            seen={}
            for k in range(self.apex_bound+1):
                for f in fs.all_maps(FinSet.canonical(k),dom.index):
                    for a in self.M.homs(dom.along(f),cod): seen.setdefault(self.arrow(dom,f,a),None)
            self._homs[(dom,cod)]=list(seen)
        return self._homs[(dom,cod)]
    def identity(self,A,token='1'):
        return self.arrow(ObjFamily.of([token],{token:A}),FinMap.of(['1'],[token],{'1':token}),self.M.identity(A,'1'))
    def act(self,alpha,sigma):
        self.check_act(alpha,sigma)
        e=alpha.data
        return self.arrow(alpha.dom.along(sigma),fs.compose(fs.inverse(sigma),e.tight),e.loose)
    def compose_conn(self,beta,comps):
        dom=self.check_compose(beta,comps)
        b=beta.data
        tight,inner={},{}
        for lam in b.tight.dom:
            c=comps[b.tight(lam)].data
            for kappa in c.tight.dom: tight[fs.pair(kappa,lam)]=c.tight(kappa)
            inner[lam]=self.M.relabel(c.loose,FinMap.of(c.tight.dom,[fs.pair(k,lam) for k in c.tight.dom],{k:fs.pair(k,lam) for k in c.tight.dom}))
        if len(tight)>self.apex_bound: raise BoundExceeded(f'{self.name}: composite apex of size {len(tight)} exceeds the bound {self.apex_bound}.')
        return self.arrow(dom,FinMap.of(tight.keys(),dom.index,tight),self.M.compose_conn(b.loose,inner))

def espan(M: Multicat,bound: Optional[int]=None) -> EspanMulticat: return EspanMulticat(M,bound)


class MulticatMorphism(object):
    'Identity-on-objects map of connected arrows between two multicategories'
    def __init__(self,src: Multicat,tgt: Multicat,arrow: Callable[[MultiArrow],MultiArrow],name: str='F'):
        self.src,self.tgt,self._arrow,self.name=src,tgt,arrow,name
    def __call__(self,a: MultiArrow) -> MultiArrow: return self._arrow(a)
    def __repr__(self): return f'<{self.name}: {self.src.name}→{self.tgt.name}>'
    def check(self,bound: Optional[int]=None) -> Report:
        'Identities, the symmetric action and composition are preserved'
        bound=GG.resolve(bound)
        S,T,F=self.src,self.tgt,self
        rep=Report(subject=f'morphism {self.name}: {S.name}→{T.name}',bound=bound)
        for A in S.objects: rep.attempt('identity',{'A':A},lambda: F(S.identity(A))==T.identity(A),'F(id) ≠ id')
        arrows=S.canonical_arrows(bound)
        into={}
        for a in arrows: into.setdefault(a.cod,[]).append(a)
        for a in arrows:
            for s in fs.permutations(a.dom.index): rep.attempt('symmetry',{'arrow':a,'sigma':s},lambda: F(S.act(a,s))==T.act(F(a),s),'F(α·σ) ≠ F(α)·σ')
            for inner in multicat.composable(S,a,bound,into):
                rep.attempt('composition',{'outer':a,'inner':list(inner)},lambda: F(S.compose_canonical(a,list(inner)))==T.compose_canonical(F(a),[F(x) for x in inner]),'F(β∘α) ≠ F(β)∘F(α)')
        return rep.finish()

def monad_unit(M: Multicat,bound: Optional[int]=None) -> MulticatMorphism:
    'η: α ↦ (id, α)'
    E=espan(M,bound)
    return MulticatMorphism(M,E,lambda a: E.arrow(a.dom,fs.identity(a.dom.index),a),name='η')

def monad_mult(M: Multicat,bound: Optional[int]=None) -> MulticatMorphism:
    'μ: (f,(g,α)) ↦ (f∘g, α)'
    E=espan(M,bound)
    EE=espan(E,bound)
    def mu(e2):
        d=e2.data
        inner=d.loose.data
        return E.arrow(e2.dom,fs.compose(d.tight,inner.tight),inner.loose)
    return MulticatMorphism(EE,E,mu,name='μ')

def espan_map(F: MulticatMorphism,bound: Optional[int]=None) -> MulticatMorphism:
    'F^cart: (f,α) ↦ (f,F(α))'
    S,T=espan(F.src,bound),espan(F.tgt,bound)
    return MulticatMorphism(S,T,lambda e: T.arrow(e.dom,e.data.tight,F(e.data.loose)),name=f'{F.name}^cart')

def check_monad_laws(M: Multicat,bound: Optional[int]=None,nested_bound: Optional[int]=None) -> Report:
    '''
    μ∘η_{M^cart} = id and μ∘(η)^cart = id on the arrows of M^cart; μ∘μ = μ∘(μ)^cart on the
    arrows of ((M^cart)^cart)^cart with apexes ≤ nested_bound (default: min(bound,2)).
    '''
    bound=GG.resolve(bound)
    nested=min(bound,2) if nested_bound is None else nested_bound
    rep=Report(subject=f'monad laws of (-)^cart on {M.name}',bound=bound)
    E=espan(M,bound)
    mu=monad_mult(M,bound)
    eta_E=monad_unit(E,bound)
    eta_map=espan_map(monad_unit(M,bound),bound)
    for e in E.canonical_arrows(bound):
        rep.attempt('unit-left',{'arrow':e},lambda: mu(eta_E(e))==e,'μ(η(e)) ≠ e')
        rep.attempt('unit-right',{'arrow':e},lambda: mu(eta_map(e))==e,'μ(η^cart(e)) ≠ e')
    mu_n=monad_mult(M,nested)
    mu_E=monad_mult(espan(M,nested),nested)
    mu_map=espan_map(mu_n,nested)
    EEE=espan(espan(espan(M,nested),nested),nested)
    for e3 in EEE.canonical_arrows(nested):
        rep.attempt('associativity',{'arrow':e3},lambda: mu_n(mu_E(e3))==mu_n(mu_map(e3)),'μ(μ(e)) ≠ μ(μ^cart(e))')
    rep.merge(monad_unit(M,bound).check(bound),prefix='eta-')
    return rep.finish()


##
## CARTESIAN STRUCTURES
##

class CartStructure(abc.ABC):
    'Covariant reindexing f_!α: for α: Y∘f → B over K and f: K→I, an arrow Y → B over I'
    name: str='Γ'
    def __init__(self,M: Multicat): self.M=M
    def __repr__(self): return f'<{self.__class__.__name__} {self.name} on {self.M.name}>'

    @abc.abstractmethod
    def _push(self,alpha: MultiArrow,f: FinMap,Y: ObjFamily) -> MultiArrow: pass

    def push(self,alpha: MultiArrow,f: FinMap,Y: ObjFamily) -> MultiArrow:
        if f.dom!=alpha.dom.index or f.cod!=Y.index: raise StructuralError(f'{f.render()} does not go from the inputs of {alpha.id} to the index of {Y.render()}.')
        if Y.along(f)!=alpha.dom: raise StructuralError(f'Target family {Y.render()} is not compatible with {alpha.render()} along {f.render()}.')
        return self._push(alpha,f,Y)
    def gamma(self,e: MultiArrow) -> MultiArrow:
        'Γ: M^cart → M'
        return self.push(e.data.loose,e.data.tight,e.dom)

def covariant_reindex(G: CartStructure,alpha: MultiArrow,f: FinMap,Y: ObjFamily) -> MultiArrow:
    'f_!α'
    return G.push(alpha,f,Y)

def extensions(M: Multicat,X: ObjFamily,f: FinMap) -> Iterable[ObjFamily]:
    'All families Y over cod f with Y∘f = X'
    fixed={}
    for k,i in f.table:
        if fixed.setdefault(i,X.at(k))!=X.at(k): return
    free=[i for i in f.cod if i not in fixed]
    for objs in itertools.product(M.objects.elements,repeat=len(free)):
        yield ObjFamily.of(f.cod,{**fixed,**dict(zip(free,objs))})

def push_loose(G: CartStructure,a: LooseArrow,f: FinMap,q: FinMap,X: ObjFamily) -> LooseArrow:
    'Fiberwise covariant reindexing of a over p = q∘f, giving X → cod a over q'
    if fs.compose(q,f)!=a.base: raise StructuralError(f'{q.render()}∘{f.render()} is not the base {a.base.render()}.')
    fp,fq=fs.fibers(a.base),fs.fibers(q)
    comps={j:G.push(a.at(j),fs.restrict(f,fp[j],fq[j]),X.restrict(fq[j])) for j in q.cod}
    return LooseArrow.assemble(q,X,a.cod,comps)


class CMonCategory(pydantic.BaseModel):
    'Finite category enriched in commutative monoids: addition on parallel arrows and a zero in every hom'
    model_config=pydantic.ConfigDict(frozen=True)
    category: FinCategory
    add: Tuple[Tuple[str,str,str],...]
    zeros: Tuple[Tuple[str,str,str],...]

    @pydantic.field_validator('add','zeros')
    @classmethod
    def rows_sorted(cls,v): return tuple(sorted(v))
    @pydantic.model_validator(mode='after')
    def tables_total(self):
        C=self.category
        want={(x,y) for A in C.objects for B in C.objects for x in C.hom(A,B) for y in C.hom(A,B)}
        keys=[(x,y) for x,y,_ in self.add]
        if len(set(keys))!=len(keys) or set(keys)!=want: raise ValueError('Addition must have exactly one entry per pair of parallel arrows.')
        for x,y,z in self.add:
            if z not in C.hom(C.src(x),C.tgt(x)): raise ValueError(f'{x}+{y}={z} leaves the hom-set.')
        zk=[(A,B) for A,B,_ in self.zeros]
        if len(set(zk))!=len(zk) or set(zk)!=set(itertools.product(C.objects,C.objects)): raise ValueError('A zero is required in every hom-set.')
        for A,B,z in self.zeros:
            if z not in C.hom(A,B): raise ValueError(f'Zero {z} is not an arrow {A}→{B}.')
        return self

    @staticmethod
    def of(C: FinCategory,plus: Callable[[str,str],str],zero: Callable[[str,str],str]) -> 'CMonCategory':
        return CMonCategory(category=C,add=tuple((x,y,plus(x,y)) for A in C.objects for B in C.objects for x in C.hom(A,B) for y in C.hom(A,B)),
            zeros=tuple((A,B,zero(A,B)) for A in C.objects for B in C.objects))
    def plus(self,x: str,y: str) -> str: return multicat._table(self.add)[(x,y)]
    def zero(self,A: str,B: str) -> str: return {(a,b):z for a,b,z in self.zeros}[(A,B)]
    def total(self,xs: Iterable[str],A: str,B: str) -> str: return functools.reduce(self.plus,xs,self.zero(A,B))
    def check_laws(self) -> Report:
        'Each hom a commutative monoid, composition bilinear and absorbing zeros'
        C=self.category
        rep=Report(subject='commutative-monoid enrichment',bound=0)
        ob=C.objects.elements
        for A,B in itertools.product(ob,ob):
            H=C.hom(A,B)
            z=self.zero(A,B)
            for x in H: rep.expect(self.plus(z,x)==x,'unit',{'x':x},f'0+{x} ≠ {x}')
            for x,y in itertools.product(H,H): rep.expect(self.plus(x,y)==self.plus(y,x),'commutativity',{'x':x,'y':y},f'{x}+{y} ≠ {y}+{x}')
            for x,y,w in itertools.product(H,H,H): rep.expect(self.plus(self.plus(x,y),w)==self.plus(x,self.plus(y,w)),'associativity',{'x':x,'y':y,'z':w},'(x+y)+z ≠ x+(y+z)')
        for A,B,D in itertools.product(ob,ob,ob):
            for g in C.hom(B,D):
                rep.expect(C.comp(g,self.zero(A,B))==self.zero(A,D),'zero-absorption',{'g':g,'A':A},f'{g}∘0 ≠ 0')
                for x,y in itertools.product(C.hom(A,B),C.hom(A,B)):
                    rep.expect(C.comp(g,self.plus(x,y))==self.plus(C.comp(g,x),C.comp(g,y)),'bilinearity',{'g':g,'x':x,'y':y},f'{g}∘({x}+{y}) ≠ {g}∘{x}+{g}∘{y}')
            for h in C.hom(A,B):
                rep.expect(C.comp(self.zero(B,D),h)==self.zero(A,D),'zero-absorption',{'h':h,'D':D},f'0∘{h} ≠ 0')
                for x,y in itertools.product(C.hom(B,D),C.hom(B,D)):
                    rep.expect(C.comp(self.plus(x,y),h)==self.plus(C.comp(x,h),C.comp(y,h)),'bilinearity',{'h':h,'x':x,'y':y},f'({x}+{y})∘{h} ≠ {x}∘{h}+{y}∘{h}')
        return rep.finish()
    def validated(self) -> 'CMonCategory':
        self.category.validated()
        rep=self.check_laws()
        if not rep.ok:
            v=rep.violations[0]
            raise LawValidationError(f'Not a commutative-monoid enrichment: {v.law} fails at {v.instance} ({v.explanation}).')
        return self
    def to_json_obj(self) -> dict:
        return {'category':self.category.to_json_obj(),'add':[list(r) for r in self.add],'zeros':[list(r) for r in self.zeros]}
    @staticmethod
    def from_json_obj(d: dict) -> 'CMonCategory':
        return CMonCategory(category=FinCategory.from_json_obj(d['category']),add=tuple(tuple(r) for r in d['add']),zeros=tuple(tuple(r) for r in d['zeros']))

def rig_enrichment(R: Rig) -> CMonCategory:
    'The one-object category of R with its addition'
    return CMonCategory(category=multicat.rig_category(R),add=R.add,zeros=(('*','*',R.zero),))


class CMonCart(CartStructure):
    '(f_!α)_i = Σ_{k∈f⁻¹(i)} α_k, the zero on empty fibers'
    def __init__(self,M: CocartesianMulticat,E: CMonCategory,name: str='Γ_+'):
        if M.C!=E.category: raise StructuralError(f'{M.name} is not built on the enriched category.')
        self.M,self.E,self.name=M,E,name
    def _push(self,alpha,f,Y):
        fam=dict(alpha.data)
        ff=fs.fibers(f)
        return CocartesianMulticat._arrow(Y,alpha.cod,tuple((i,self.E.total([fam[k] for k in ff[i]],Y.at(i),alpha.cod)) for i in Y.index))

class RigCart(CMonCart):
    def __init__(self,M: CocartesianMulticat,R: Rig):
        super().__init__(M,rig_enrichment(R),name='Γ_R')
        self.rig=R

def from_cmon_enriched(E: CMonCategory,name: str='C_▶'):
    'C_▶ with summation along fibers; returns (multicategory, cartesian structure)'
    E=E.validated()
    M=CocartesianMulticat(E.category,name=name)
    return M,CMonCart(M,E)

def extract_enrichment(G: CartStructure) -> CMonCategory:
    'x+y = fold_!⟨x,y⟩ and 0 = (∅→1)_!⟨⟩ on a cartesian C_▶'
    M=G.M
    if not isinstance(M,CocartesianMulticat): raise StructuralError(f'{M.name} is not of the form C_▶.')
    C=M.C
    def plus(x,y):
        A,B=C.src(x),C.tgt(x)
        a=CocartesianMulticat._arrow(ObjFamily.seq([A,A]),B,(('1',x),('2',y)))
        return dict(G.push(a,fs.constant(FinSet.canonical(2),'1'),ObjFamily.seq([A])).data)['1']
    def zero(A,B):
        a=CocartesianMulticat._arrow(ObjFamily.empty(),B,())
        return dict(G.push(a,fs.empty_map(['1']),ObjFamily.seq([A])).data)['1']
    return CMonCategory.of(C,plus,zero)


class FreeCart(CartStructure):
    'Γ on M^cart: the new tight leg is composed into the recorded one'
    def __init__(self,E: EspanMulticat):
        self.M,self.name=E,'Γ_free'
    def _push(self,alpha,f,Y):
        e=alpha.data
        return self.M.arrow(Y,fs.compose(f,e.tight),e.loose)

def free_cartesian(M: Multicat,bound: Optional[int]=None):
    'M^cart with its free cartesian structure'
    E=espan(M,bound)
    return E,FreeCart(E)


class ThinCart(CartStructure):
    'The only cartesian structure of a multicategory with at most one arrow per type (1_▶, meets)'
    def __init__(self,M: Multicat):
        self.M,self.name=M,'Γ_!'
    def _push(self,alpha,f,Y):
        hh=self.M.homs(Y,alpha.cod)
        if len(hh)!=1: raise StructuralError(f'{self.M.name} has {len(hh)} arrows {Y.render()}→{alpha.cod}; no covariant reindexing of {alpha.id} along {f.render()}.')
        return hh[0]


class TableCart(CartStructure):
    '''
    Γ given by a table over canonical data: keys (arrow id, its domain, images of f, target
    family), all over {"1",…}; other index sets are transported along order isomorphisms.
    '''
    def __init__(self,M: Multicat,table: Dict[Tuple[str,Tuple[str,...],Tuple[str,...],Tuple[str,...]],str],bound: int,name: str='Γ_T'):
        self.M,self.table,self.bound,self.name=M,dict(table),bound,name
    def _push(self,alpha,f,Y):
        if max(len(f.dom),len(f.cod))>self.bound: raise BoundExceeded(f'{self.name}: table ends at arity {self.bound}.')
        rk,ri=fs.order_iso(f.dom),fs.order_iso(f.cod)
        a0=self.M.relabel(alpha,rk)
        fc=fs.compose(ri,fs.compose(f,fs.inverse(rk)))
        key=(a0.id,a0.dom.values(),tuple(j for _,j in fc.table),Y.values())
        z=self.table.get(key)
        if z is None: raise StructuralError(f'{self.name} is not defined at {alpha.id} along {f.render()} into {Y.render()}.')
        hit=[b for b in self.M.homs(Y.canonical(),alpha.cod) if b.id==z]
        if not hit: raise StructuralError(f'{self.name}: result {z} is not an arrow {Y.canonical().render()}→{alpha.cod}.')
        return self.M.relabel(hit[0],fs.inverse(ri))
    def to_json_obj(self) -> dict:
        return {'gamma':[{'arrow':a,'dom':list(d),'f':list(f),'target':list(t),'result':z} for (a,d,f,t),z in sorted(self.table.items())]}
    @staticmethod
    def from_json_obj(M: Multicat,d: dict,bound: int) -> 'TableCart':
        return TableCart(M,{(r['arrow'],tuple(r['dom']),tuple(r['f']),tuple(r['target'])):r['result'] for r in d['gamma']},bound)

def tabulate_cart(G: CartStructure,bound: Optional[int]=None) -> TableCart:
    bound=GG.resolve(bound)
    M=G.M
    table={}
    for a in M.canonical_arrows(bound):
        for I in fs.canonical_sets(bound):
            for f in fs.all_maps(a.dom.index,I):
                for Y in extensions(M,a.dom,f):
                    table[(a.id,a.dom.values(),tuple(j for _,j in f.table),Y.values())]=G.push(a,f,Y).id
    log.debug(f'{G.name}: {len(table)} table entries at bound {bound}')
    return TableCart(M,table,bound,name=G.name)


class PerturbedCart(CartStructure):
    'Γ with one value replaced'
    def __init__(self,inner: CartStructure,alpha: MultiArrow,f: FinMap,Y: ObjFamily,result: MultiArrow):
        self.M,self.inner,self.name=inner.M,inner,f'{inner.name}*'
        self.key,self.result=(alpha,f,Y),result
    def _push(self,alpha,f,Y):
        if (alpha,f,Y)==self.key: return self.result
        return self.inner.push(alpha,f,Y)

def first_difference(G1: CartStructure,G2: CartStructure,bound: Optional[int]=None) -> Optional[Tuple[MultiArrow,FinMap,ObjFamily]]:
    'First (α,f,Y) in enumeration order where two structures on the same multicategory differ'
    bound=GG.resolve(bound)
    M=G1.M
    for a in M.canonical_arrows(bound):
        for I in fs.canonical_sets(bound):
            for f in fs.all_maps(a.dom.index,I):
                for Y in extensions(M,a.dom,f):
                    if G1.push(a,f,Y)!=G2.push(a,f,Y): return a,f,Y
    return None


##
## SETS AND MEETS
##

class FunctionMulticat(Multicat):
    '''
    Finite sets and several-variable mappings: an arrow X → B is a function Π_i X_i → B,
    stored as its values over the points of Π_i X_i in lexicographic order.
    '''
    def __init__(self,carriers: Dict[str,Iterable[str]],name: str='Set_f'):
        self.carriers={A:FinSet.of(v).elements for A,v in carriers.items()}
        self.objects,self.name=FinSet.of(self.carriers.keys()),name
    def points(self,X: ObjFamily) -> Iterable[Tuple[str,...]]: return itertools.product(*[self.carriers[A] for A in X.values()])
    def _arrow(self,dom,cod,values: Tuple[str,...]) -> MultiArrow:
        return MultiArrow(id='⟦'+','.join(values)+'⟧',dom=dom,cod=cod,data=values)
    def function(self,dom: ObjFamily,cod: str,fn: Callable[[Dict[str,str]],str]) -> MultiArrow:
        vals=[]
        for xs in self.points(dom):
            v=fn(dict(zip(dom.index.elements,xs)))
            if v not in self.carriers[cod]: raise StructuralError(f'Value {v} is not in the carrier of {cod}.')
            vals.append(v)
        return self._arrow(dom,cod,tuple(vals))
    def evaluate(self,alpha: MultiArrow,point: Dict[str,str]) -> str:
        idx=0
        for i,A in alpha.dom.assign:
            c=self.carriers[A]
            idx=idx*len(c)+c.index(point[i])
        return alpha.data[idx]
    def homs(self,dom,cod):
        n=len(list(self.points(dom)))
        return [self._arrow(dom,cod,vv) for vv in itertools.product(self.carriers[cod],repeat=n)]
    def identity(self,A,token='1'): return self.function(ObjFamily.of([token],{token:A}),A,lambda x: x[token])
    def act(self,alpha,sigma):
        self.check_act(alpha,sigma)
        return self.function(alpha.dom.along(sigma),alpha.cod,lambda y: self.evaluate(alpha,{sigma(i):y[i] for i in sigma.dom}))
    def compose_conn(self,beta,comps):
        dom=self.check_compose(beta,comps)
        return self.function(dom,beta.cod,lambda x: self.evaluate(beta,{j:self.evaluate(a,{i:x[i] for i in a.dom.index}) for j,a in comps.items()}))

class SetsCart(CartStructure):
    '(f_!α)(y) = α(y∘f): variables duplicated or deleted'
    def __init__(self,F: FunctionMulticat):
        self.M,self.name=F,'Γ_Set'
    def _push(self,alpha,f,Y):
        return self.M.function(Y,alpha.cod,lambda y: self.M.evaluate(alpha,{k:y[f(k)] for k in f.dom}))

def from_carriers(carriers: Dict[str,Iterable[str]]):
    F=FunctionMulticat(carriers)
    return F,SetsCart(F)


class MeetsMulticat(Multicat):
    'Thin multicategory of a finite meet-semilattice: one arrow X → B iff ∧X ≤ B'
    def __init__(self,C: FinCategory,meets: Dict[Tuple[str,str],str],top: str,name: str='∧'):
        self.C,self.meets,self.top,self.name,self.objects=C,meets,top,name,C.objects
    def meet(self,xs: Iterable[str]) -> str: return functools.reduce(lambda a,b: self.meets[(a,b)],xs,self.top)
    def _arrow(self,dom,cod): return MultiArrow(id='≤',dom=dom,cod=cod)
    def homs(self,dom,cod): return [self._arrow(dom,cod)] if self.C.hom(self.meet(dom.values()),cod) else []
    def identity(self,A,token='1'): return self._arrow(ObjFamily.of([token],{token:A}),A)
    def act(self,alpha,sigma):
        self.check_act(alpha,sigma)
        return self._arrow(alpha.dom.along(sigma),alpha.cod)
    def compose_conn(self,beta,comps): return self._arrow(self.check_compose(beta,comps),beta.cod)

def from_meets(C: FinCategory,name: str='∧'):
    'Meet multicategory of a finite poset with all finite meets, with its cartesian structure'
    C=C.validated()
    ob=C.objects.elements
    for A,B in itertools.product(ob,ob):
        if len(C.hom(A,B))>1: raise LawValidationError(f'{A}→{B} has {len(C.hom(A,B))} arrows; a poset is required.')
    def glb(cands):
        lower=[c for c in ob if all(C.hom(c,x) for x in cands)]
        best=[c for c in lower if all(C.hom(d,c) for d in lower)]
        if not best: raise LawValidationError(f'No meet of {list(cands)}.')
        return best[0]
    M=MeetsMulticat(C,{(a,b):glb([a,b]) for a in ob for b in ob},glb([]),name=name)
    return M,ThinCart(M)


##
## LAW CHECKS
##

def check_cartesian_laws(M: Multicat,G: CartStructure,bound: Optional[int]=None) -> Report:
    '''
    Unit, functoriality, coherence with the symmetric action, Frobenius, Beck-Chevalley
    and tailing on every instance over canonical sets of size ≤ bound.
    '''
    bound=GG.resolve(bound)
    rep=Report(subject=f'cartesian laws of {G.name} on {M.name}',bound=bound)
    sets=list(fs.canonical_sets(bound))
    small=sets[:3]
    for a in M.canonical_arrows(bound):
        K=a.dom.index
        rep.attempt('unit',{'arrow':a},lambda: G.push(a,fs.identity(K),a.dom)==a,'id_!α ≠ α')
        for J in sets:
            for g in fs.all_maps(K,J):
                for W in extensions(M,a.dom,g):
                    try: ga=G.push(a,g,W)
                    except BoundExceeded as e:
                        rep.skip('functoriality',str(e))
                        continue
                    if g.is_bijective(): rep.attempt('coherence',{'arrow':a,'f':g},lambda: ga==M.act(a,fs.inverse(g)),'f_!α ≠ α·f⁻¹ for bijective f')
                    for I in sets:
                        for f in fs.all_maps(J,I):
                            for Z in extensions(M,W,f):
                                rep.attempt('functoriality',{'arrow':a,'g':g,'f':f,'target':Z},lambda: G.push(ga,f,Z)==G.push(a,fs.compose(f,g),Z),'f_!(g_!α) ≠ (fg)_!α')
    for n in range(bound+1):
        for X in M.families(n):
            for J in small:
                for k in fs.all_maps(X.index,J):
                    for al in multicat.loose_out(M,X,k):
                        _frobenius(M,G,rep,X,k,al,sets,bound)
                        _tailing(M,G,rep,al,sets)
                        _beck_chevalley(M,G,rep,al,sets,small,bound)
    return rep.finish()

def _frobenius(M,G,rep,X,k,al,sets,bound):
    'left_!(β∘g*α) = (g_!β)∘α'
    Y=al.cod
    for J2 in sets:
        for g in fs.all_maps(J2,k.cod):
            sq=fs.pullback(k,g)
            if len(sq.apex)>bound:
                rep.skip('frobenius',f'apex of size {len(sq.apex)}')
                continue
            for C in M.objects:
                for beta in M.homs(Y.along(g),C):
                    def lhs():
                        lifted,_=multicat.reindex_loose(M,al,g)
                        return G.push(M.compose_conn(beta,lifted.fiber_components()),sq.left,X)
                    rep.attempt('frobenius',{'alpha':al,'g':g,'beta':beta},lambda: lhs()==M.compose_conn(G.push(beta,g,Y),al.fiber_components()),'left_!(β∘g*α) ≠ (g_!β)∘α')

def _triangles(M,al,sets):
    'Factorizations p = q∘f of the base of al with the target families X over cod f'
    A=al.dom
    for I in sets:
        for f in fs.all_maps(A.index,I):
            for q in fs.all_maps(I,al.base.cod):
                if fs.compose(q,f)!=al.base: continue
                for X in extensions(M,A,f): yield f,q,X

def _tailing(M,G,rep,al,sets):
    '(β∘α) reindexed along f equals β∘(α reindexed fiberwise along f)'
    for C in M.objects:
        for beta in M.homs(al.cod,C):
            try: ba=M.compose_conn(beta,al.fiber_components())
            except BoundExceeded as e:
                rep.skip('tailing',str(e))
                continue
            for f,q,X in _triangles(M,al,sets):
                rep.attempt('tailing',{'alpha':al,'beta':beta,'f':f,'q':q},lambda: G.push(ba,f,X)==M.compose_conn(beta,push_loose(G,al,f,q,X).fiber_components()),'f_!(β∘α) ≠ β∘f_!α')

def _beck_chevalley(M,G,rep,al,sets,small,bound):
    'l*(f_!a) = f′_!(l*a) for every l: J′→J'
    for f,q,X in _triangles(M,al,sets):
        for J2 in small:
            for l in fs.all_maps(J2,al.base.cod):
                def both():
                    lhs=multicat.reindex_loose(M,push_loose(G,al,f,q,X),l)[0]
                    ra,sq=multicat.reindex_loose(M,al,l)
                    sqq=fs.pullback(q,l)
                    f2=FinMap.of(sq.apex,sqq.apex,{x:fs.pair(f(sq.left(x)),sq.top(x)) for x in sq.apex})
                    return lhs==push_loose(G,ra,f2,sqq.top,X.along(sqq.left))
                rep.attempt('beck-chevalley',{'alpha':al,'f':f,'q':q,'l':l},both,'l*(f_!a) ≠ f′_!(l*a)')

def check_cartesian_algebra(M: Multicat,G: CartStructure,bound: Optional[int]=None) -> Report:
    'Γ: M^cart → M is a morphism with Γ∘η = id and Γ∘μ = Γ∘Γ^cart'
    bound=GG.resolve(bound)
    rep=Report(subject=f'monad-algebra equations of {G.name} on {M.name}',bound=bound)
    E=espan(M,bound)
    eta=monad_unit(M,bound)
    for a in M.canonical_arrows(bound): rep.attempt('algebra-unit',{'arrow':a},lambda: G.gamma(eta(a))==a,'Γ(η(α)) ≠ α')
    gam=MulticatMorphism(E,M,G.gamma,name='Γ')
    rep.merge(gam.check(bound),prefix='algebra-')
    EE=espan(E,bound)
    for e2 in EE.canonical_arrows(bound):
        def both():
            d=e2.data
            inner=d.loose.data
            return G.gamma(E.arrow(e2.dom,fs.compose(d.tight,inner.tight),inner.loose))==G.gamma(E.arrow(e2.dom,d.tight,G.gamma(d.loose)))
        rep.attempt('algebra-multiplication',{'arrow':e2},both,'Γ(μ(e)) ≠ Γ(Γ^cart(e))')
    return rep.finish()

def check_cartesian(M: Multicat,G: CartStructure,bound: Optional[int]=None) -> Report:
    'Both formulations, merged; their verdicts must agree'
    bound=GG.resolve(bound)
    if G.M is not M: raise StructuralError(f'{G.name} is a structure on {G.M.name}, not on {M.name}.')
    laws=check_cartesian_laws(M,G,bound)
    alg=check_cartesian_algebra(M,G,bound)
    rep=Report(subject=f'cartesian structure {G.name} on {M.name}',bound=bound)
    rep.merge(laws).merge(alg)
    rep.expect(laws.ok==alg.ok,'formulations-agree',{'laws':laws.status,'algebra':alg.status},'the law suite and the algebra equations disagree')
    return rep.finish()


##
## MODELS
##

class Model(abc.ABC):
    'A finite set for every object and a mapping for every connected arrow'
    @abc.abstractmethod
    def carriers(self) -> Dict[str,Tuple[str,...]]: pass
    @abc.abstractmethod
    def interpret(self,M: Multicat,alpha: MultiArrow) -> Callable[[Dict[str,str]],str]: pass
    def explain(self,alpha: MultiArrow,f: FinMap,point: Dict[str,str],lhs: str,rhs: str) -> str:
        return f'model(f_!α) = {lhs} but model(α)(y∘f) = {rhs} at y = {point}'

class ModuleModel(pydantic.BaseModel,Model):
    'Module over a rig, interpreting an arrow (r_i) of R_▶ as x ↦ Σ r_i·x_i'
    model_config=pydantic.ConfigDict(frozen=True)
    rig: Rig
    carrier: FinSet
    add: Tuple[Tuple[str,str,str],...]
    zero: str
    action: Tuple[Tuple[str,str,str],...]
    obj: str='*'

    @staticmethod
    def of(R: Rig,carrier: Iterable[str],plus: Callable[[str,str],str],zero: str,act: Callable[[str,str],str],obj: str='*') -> 'ModuleModel':
        carrier=FinSet.of(carrier)
        return ModuleModel(rig=R,carrier=carrier,add=tuple((x,y,plus(x,y)) for x in carrier for y in carrier),zero=zero,
            action=tuple((r,x,act(r,x)) for r in R.carrier for x in carrier),obj=obj)
    @staticmethod
    def regular(R: Rig) -> 'ModuleModel': return ModuleModel.of(R,R.carrier,R.plus,R.zero,R.times)
    def plus(self,x,y): return multicat._table(self.add)[(x,y)]
    def scale(self,r,x): return multicat._table(self.action)[(r,x)]
    def carriers(self): return {self.obj:self.carrier.elements}
    def interpret(self,M,alpha):
        fam=dict(alpha.data)
        return lambda x: functools.reduce(self.plus,[self.scale(fam[i],x[i]) for i in alpha.dom.index],self.zero)
    def explain(self,alpha,f,point,lhs,rhs):
        if alpha.arity()==2 and len(f.cod)==1:
            (_,r),(_,s)=alpha.data
            a=next(iter(point.values()))
            return f'{r}·{a} + {s}·{a} ≠ ({r}+{s})·{a}: model(f_!α) = {lhs}, model(α)(y∘f) = {rhs}'
        return super().explain(alpha,f,point,lhs,rhs)

class TableModel(Model):
    'Values of every canonical arrow (keyed "id@[dom]→cod") on every tuple of inputs'
    def __init__(self,carriers: Dict[str,Iterable[str]],tables: Dict[str,Dict[Tuple[str,...],str]]):
        self._carriers={A:FinSet.of(v).elements for A,v in carriers.items()}
        self.tables={k:dict(t) for k,t in tables.items()}
    @staticmethod
    def key(alpha: MultiArrow) -> str: return f'{alpha.id}@{fincat.fam_token(alpha.dom.values())}→{alpha.cod}'
    @staticmethod
    def from_function(M: Multicat,carriers: Dict[str,Iterable[str]],fn: Callable[[MultiArrow,Tuple[str,...]],str],bound: Optional[int]=None) -> 'TableModel':
        carriers={A:FinSet.of(v).elements for A,v in carriers.items()}
        return TableModel(carriers,{TableModel.key(a):{xs:fn(a,xs) for xs in itertools.product(*[carriers[A] for A in a.dom.values()])} for a in M.canonical_arrows(GG.resolve(bound))})
    def carriers(self): return self._carriers
    def interpret(self,M,alpha):
        a0=M.to_canonical(alpha)
        t=self.tables.get(TableModel.key(a0))
        if t is None: raise StructuralError(f'The model does not interpret {a0.render()}.')
        return lambda x: t[tuple(x[i] for i in alpha.dom.index)]
    def to_json_obj(self) -> dict:
        return {'carriers':{A:list(v) for A,v in self._carriers.items()},'arrows':[{'key':k,'table':[[list(xs),y] for xs,y in sorted(t.items())]} for k,t in sorted(self.tables.items())]}
    @staticmethod
    def from_json_obj(d: dict) -> 'TableModel':
        return TableModel(d['carriers'],{r['key']:{tuple(xs):y for xs,y in r['table']} for r in d['arrows']})

def check_model(M: Multicat,G: CartStructure,model: Model,bound: Optional[int]=None) -> Report:
    '''
    The model as a map into finite sets and mappings preserves identities, composition,
    the symmetric action and covariant reindexing (duplicating and deleting variables).
    '''
    bound=GG.resolve(bound)
    rep=Report(subject=f'model of {M.name}',bound=bound)
    car=model.carriers()
    if not set(M.objects)<=set(car): raise StructuralError(f'The model has no carrier for {sorted(set(M.objects)-set(car))}.')
    F=FunctionMulticat(car)
    S=SetsCart(F)
    def image(a): return F.function(a.dom,a.cod,model.interpret(M,a))
    for A in M.objects: rep.expect(image(M.identity(A))==F.identity(A),'model-identity',{'A':A},'the identity is not interpreted as the identity')
    arrows=M.canonical_arrows(bound)
    into={}
    for a in arrows: into.setdefault(a.cod,[]).append(a)
    for a in arrows:
        ia=image(a)
        for s in fs.permutations(a.dom.index): rep.expect(image(M.act(a,s))==F.act(ia,s),'model-symmetry',{'arrow':a,'sigma':s},'model(α·σ) ≠ model(α)·σ')
        for I in fs.canonical_sets(bound):
            for f in fs.all_maps(a.dom.index,I):
                for Y in extensions(M,a.dom,f):
                    lhs,rhs=image(G.push(a,f,Y)),S.push(ia,f,Y)
                    if lhs==rhs:
                        rep.count('model-cartesian')
                        continue
                    pt=next(dict(zip(Y.index.elements,xs)) for xs in F.points(Y) if F.evaluate(lhs,dict(zip(Y.index.elements,xs)))!=F.evaluate(rhs,dict(zip(Y.index.elements,xs))))
                    rep.expect(False,'model-cartesian',{'arrow':a,'f':f,'target':Y},model.explain(a,f,pt,F.evaluate(lhs,pt),F.evaluate(rhs,pt)))
        for inner in multicat.composable(M,a,bound,into):
            rep.attempt('model-composition',{'outer':a,'inner':list(inner)},lambda: image(M.compose_canonical(a,list(inner)))==F.compose_canonical(ia,[image(x) for x in inner]),'model(β∘α) ≠ model(β)∘model(α)')
    return rep.finish()
