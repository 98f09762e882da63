'''
Span(M): a span X ⇸ Y is a tight leg t: K→I (apex X∘t) and a loose arrow from the apex to
Y. Spans compose by pulling the first loose leg back along the second tight leg.
Universal products are searched fiberwise; the factorization they promise is cross-checked
by composing spans.
'''
import pydantic
from typing import Tuple,Dict,List,Optional,Iterable
import itertools
import sys,os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))
from common import StructuralError,TheoremViolation,BoundExceeded,GG,Report,log
import finset as fs
from finset import FinMap,token_key
import multicat
from multicat import Multicat,LooseArrow,ObjFamily


class SpanArrow(pydantic.BaseModel):
    model_config=pydantic.ConfigDict(frozen=True)
    src: ObjFamily
    tight: FinMap
    loose: LooseArrow

    @pydantic.model_validator(mode='after')
    def legs_match(self):
        if self.tight.cod!=self.src.index or self.loose.dom!=self.src.along(self.tight): raise ValueError('The apex must be the source family along the tight leg.')
        return self
    @property
    def tgt(self) -> ObjFamily: return self.loose.cod
    def render(self) -> str: return f'{self.src.render()} ⟵{self.tight.render()}⟶ {self.loose.render()}'


def canonical(M: Multicat,s: SpanArrow) -> SpanArrow:
    'Apex {"1",…,"k"}, least in (tight table, loose base table, component ids) over all relabellings'
    K=s.tight.dom
    rho=fs.order_iso(K)
    best=None
    for p in fs.permutations(rho.cod):
        iso=fs.compose(p,rho)          # K → {"1",…,"k"}
        inv=fs.inverse(iso)
        a=multicat.relabel_loose(M,s.loose,inv)
        t=fs.compose(s.tight,inv)
        key=(tuple(token_key(i) for _,i in t.table),tuple(token_key(j) for _,j in a.base.table),tuple(c.id for _,c in a.components))
        if best is None or key<best[0]: best=(key,t,a)
    return SpanArrow(src=s.src,tight=best[1],loose=best[2])

def make_span(M: Multicat,tight: FinMap,loose: LooseArrow,src: ObjFamily) -> SpanArrow:
    try: s=SpanArrow(src=src,tight=tight,loose=loose)
    except pydantic.ValidationError as e: raise StructuralError(f'Not a span: {e.errors()[0]["msg"]}') from None
    return canonical(M,s)

def identity_span(M: Multicat,X: ObjFamily) -> SpanArrow:
    return make_span(M,fs.identity(X.index),multicat.identity_loose(M,X),X)

def loose_span(M: Multicat,a: LooseArrow) -> SpanArrow:
    'a with an identity tight leg'
    return make_span(M,fs.identity(a.dom.index),a,a.dom)

def tight_span(M: Multicat,X: ObjFamily,t: FinMap) -> SpanArrow:
    'The reindexing X ⇸ X∘t with an identity loose leg'
    return make_span(M,t,multicat.identity_loose(M,X.along(t)),X)

def compose_spans(M: Multicat,s2: SpanArrow,s1: SpanArrow) -> SpanArrow:
    's2∘s1: s1.loose is reindexed along s2.tight, then composed with s2.loose'
    if s1.tgt!=s2.src: raise StructuralError(f'Spans do not compose: {s1.tgt.render()} ≠ {s2.src.render()}.')
    lifted,sq=multicat.reindex_loose(M,s1.loose,s2.tight)
    return make_span(M,fs.compose(s1.tight,sq.left),multicat.compose(M,s2.loose,lifted),s1.src)

def check_span_category(M: Multicat,bound: Optional[int]=None) -> Report:
    'Unit spans are neutral and composition is associative on spans with apex and families ≤ bound'
    bound=GG.resolve(bound)
    rep=Report(subject=f'Span({M.name})',bound=bound)
    spans={}
    for n in range(bound+1):
        for X in M.families(n):
            for K in fs.canonical_sets(bound):
                for t in fs.all_maps(K,X.index):
                    V=X.along(t)
                    for J in fs.canonical_sets(min(bound,2)):
                        for p in fs.all_maps(K,J):
                            for a in multicat.loose_out(M,V,p): spans.setdefault(X,[]).append(make_span(M,t,a,X))
    for X,ss in spans.items():
        for s in ss:
            rep.attempt('span-unit',{'span':s},lambda: compose_spans(M,s,identity_span(M,X))==s and compose_spans(M,identity_span(M,s.tgt),s)==s,'identity span is not neutral')
            for s2 in spans.get(s.tgt,[])[:8]:
                for s3 in spans.get(s2.tgt,[])[:8]:
                    rep.attempt('span-associativity',{'s1':s,'s2':s2,'s3':s3},lambda: compose_spans(M,s3,compose_spans(M,s2,s))==compose_spans(M,compose_spans(M,s3,s2),s),'(s3∘s2)∘s1 ≠ s3∘(s2∘s1)')
    return rep.finish()


##
## UNIVERSAL PRODUCTS
##

class ProductWitness(pydantic.BaseModel):
    '''
    Product of X along f: I→J: P over J with projections π: P∘f → X over id_I (unary
    components π_i: P_f(i) → X_i) and optionally the diagonal u: X → P over f.
    '''
    model_config=pydantic.ConfigDict(frozen=True)
    X: ObjFamily
    f: FinMap
    P: ObjFamily
    pi: LooseArrow
    u: Optional[LooseArrow]=None
    flags: Tuple[Tuple[str,bool],...]=()

    @pydantic.model_validator(mode='after')
    def shapes(self):
        if self.f.dom!=self.X.index or self.f.cod!=self.P.index: raise ValueError('X and P must be indexed by the domain and codomain of f.')
        if not self.pi.base.is_identity() or self.pi.dom!=self.P.along(self.f) or self.pi.cod!=self.X: raise ValueError('π must go from P∘f to X over the identity.')
        if self.u is not None and (self.u.base!=self.f or self.u.dom!=self.X or self.u.cod!=self.P): raise ValueError('u must go from X to P over f.')
        return self
    def flag(self,name: str) -> bool: return dict(self.flags).get(name,False)
    def with_flags(self,**kw) -> 'ProductWitness':
        return self.model_copy(update={'flags':tuple(sorted({**dict(self.flags),**kw}.items()))})
    def render(self) -> str: return f'P={self.P.render()}, π={self.pi.render()}'+('' if self.u is None else f', u={self.u.render()}')


def _factor_bijective(M: Multicat,w: ProductWitness,j: str,Q: ObjFamily) -> Tuple[int,int,bool]:
    'a ↦ (π_i∘a)_{i∈f⁻¹(j)} from hom(Q,P_j) to Π_i hom(Q,X_i): (|source|, |target|, bijective)'
    A=M.homs(Q,w.P.at(j))
    fib=fs.fiber(w.f,j)
    nb=1
    for i in fib: nb*=len(M.homs(Q,w.X.at(i)))
    images={tuple(M.compose_conn(w.pi.at(i),{i:a}) for i in fib) for a in A}
    return len(A),nb,(len(images)==len(A)==nb)

def is_universal(M: Multicat,w: ProductWitness,bound: Optional[int]=None) -> bool:
    '''
    For every h: K→J (|K| ≤ bound) and Q over K, t ↦ π∘(f*t) is a bijection from loose
    arrows Q → P over h onto loose arrows Q∘left → X over the pulled-back map. The map is a
    product over j ∈ J of the fiberwise maps; it is bijective iff both sides are empty or
    every factor is bijective.
    '''
    bound=GG.resolve(bound)
    cache={}
    for n in range(bound+1):
        for Q in M.families(n):
            for h in fs.all_maps(Q.index,w.f.cod):
                factors=[]
                for j,ff in fs.fibers(h).items():
                    Qj=Q.restrict(ff)
                    if (j,Qj) not in cache: cache[(j,Qj)]=_factor_bijective(M,w,j,Qj)
                    factors.append(cache[(j,Qj)])
                if all(ok for _,_,ok in factors): continue
                if any(na==0 for na,_,_ in factors) and any(nb==0 for _,nb,_ in factors): continue
                log.debug(f'{M.name}: π of {w.P.render()} does not factor {Q.render()} along {h.render()}')
                return False
    return True

def projections(M: Multicat,X: ObjFamily,f: FinMap,P: ObjFamily) -> List[LooseArrow]:
    return multicat.loose_homs(M,P.along(f),fs.identity(X.index),X)

def candidates(M: Multicat,X: ObjFamily,f: FinMap) -> Iterable[ObjFamily]:
    'Families over cod f in canonical order'
    for objs in itertools.product(M.objects.elements,repeat=len(f.cod)): yield ObjFamily.of(f.cod,dict(zip(f.cod.elements,objs)))

def find_universal_product(M: Multicat,X: ObjFamily,f: FinMap,bound: Optional[int]=None) -> Optional[ProductWitness]:
    bound=GG.resolve(bound)
    if f.dom!=X.index: raise StructuralError(f'{f.render()} does not start at the index of {X.render()}.')
    for P in candidates(M,X,f):
        for pi in projections(M,X,f,P):
            w=ProductWitness(X=X,f=f,P=P,pi=pi)
            try: ok=is_universal(M,w,bound)
            except BoundExceeded as e:
                log.debug(f'{M.name}: {w.render()} left out: {e}')
                ok=False
            if ok: return w.with_flags(universal=True)
    return None

def factors_through_spans(M: Multicat,w: ProductWitness,bound: Optional[int]=None) -> bool:
    '''
    The same property read in Span(M): every span Q ⇸ X over the pulled-back base
    (tight left, loose over top) is the composite of the π-span with exactly one loose span
    Q ⇸ P over h.
    '''
    bound=GG.resolve(bound)
    pi_span=make_span(M,w.f,w.pi,w.P)
    for n in range(bound+1):
        for Q in M.families(n):
            for h in fs.all_maps(Q.index,w.f.cod):
                sq=fs.pullback(h,w.f)
                got={}
                for t in multicat.loose_homs(M,Q,h,w.P):
                    c=compose_spans(M,pi_span,loose_span(M,t))
                    got[c]=got.get(c,0)+1
                for rho in multicat.loose_homs(M,Q.along(sq.left),sq.top,w.X):
                    if got.pop(make_span(M,sq.left,rho,Q),0)!=1: return False
                if got: return False
    return True

def spanmap_is_opfibration(M: Multicat,bound: Optional[int]=None,cross_check: bool=True) -> bool:
    'Universal products for every X and f within the bound; found witnesses are re-verified in Span(M)'
    bound=GG.resolve(bound)
    for n in range(bound+1):
        for X in M.families(n):
            for J in fs.canonical_sets(bound):
                for f in fs.all_maps(X.index,J):
                    w=find_universal_product(M,X,f,bound)
                    if w is None:
                        log.info(f'{M.name}: no universal product of {X.render()} along {f.render()}')
                        return False
                    if cross_check and not factors_through_spans(M,w,bound): raise TheoremViolation(f'{M.name}: fiberwise and span-composition checks disagree on {w.render()}.')
    return True
