'''
Algebraic products (equations in covariant reindexing), and the constructive passages
between algebraic, universal and representable products. The three detectors are
independent; equivalence_report compares them instance by instance.
'''
from typing import Tuple,Dict,List,Optional,Iterable
import itertools
import sys,os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))
from common import StructuralError,TheoremViolation,BoundExceeded,GG,Report,log
import finset as fs
from finset import FinMap
import multicat
from multicat import Multicat,LooseArrow,ObjFamily
import cartesian
from cartesian import CartStructure
import spans
from spans import ProductWitness


def _diagonal_push(M: Multicat,G: CartStructure,X: ObjFamily,f: FinMap) -> LooseArrow:
    'Δ_!(id): over the second projection of the kernel pair of f, component i′ is id_X(i′) pushed along i′ ↦ (i′,i′)'
    sq=fs.pullback(f,f)
    ff=fs.fibers(sq.top)
    XL=X.along(sq.left)
    comps={i:G.push(M.identity(X.at(i),i),FinMap.of([i],ff[i],{i:fs.pair(i,i)}),XL.restrict(ff[i])) for i in X.index}
    return LooseArrow.assemble(sq.top,XL,X,comps)

def _pi_after(M: Multicat,w: ProductWitness,t: LooseArrow) -> LooseArrow:
    'π∘(f*t)'
    lifted,_=multicat.reindex_loose(M,t,w.f)
    return multicat.compose(M,w.pi,lifted)

def algebraic_product_report(M: Multicat,G: CartStructure,w: ProductWitness) -> Report:
    '''
    First triangle: f|_!(u_j∘(π_i)) = id_P_j for every j. Second triangle:
    Δ_!(id) = π∘(f*u).
    '''
    if w.u is None: raise StructuralError('An algebraic product needs the arrow u.')
    rep=Report(subject=f'algebraic product {w.render()}',bound=len(w.X))
    ff=fs.fibers(w.f)
    for j in w.f.cod:
        def first():
            c=M.compose_conn(w.u.at(j),{i:w.pi.at(i) for i in ff[j]})
            return G.push(c,FinMap.of(ff[j],[j],{i:j for i in ff[j]}),w.P.restrict([j]))==M.identity(w.P.at(j),j)
        rep.attempt('first-triangle',{'j':j},first,f'f_!(u∘π) ≠ id over {j}')
    rep.attempt('second-triangle',{'u':w.u},lambda: _diagonal_push(M,G,w.X,w.f)==_pi_after(M,w,w.u),'Δ_!(id) ≠ π∘(f*u)')
    return rep.finish()

def check_algebraic_product(M: Multicat,G: CartStructure,w: ProductWitness) -> bool:
    rep=algebraic_product_report(M,G,w)
    if not rep.ok: log.info(f'{w.render()}: {", ".join(sorted(rep.laws_violated()))} violated')
    return rep.ok

def algebraic_products(M: Multicat,G: CartStructure,X: ObjFamily,f: FinMap) -> Iterable[ProductWitness]:
    'Every (P,π,u) satisfying both triangles, P in canonical order; a candidate whose check leaves the bound is passed over'
    for P in spans.candidates(M,X,f):
        for pi in spans.projections(M,X,f,P):
            for u in multicat.loose_homs(M,X,f,P):
                w=ProductWitness(X=X,f=f,P=P,pi=pi,u=u)
                try: rep=algebraic_product_report(M,G,w)
                except BoundExceeded: continue
                if rep.ok and rep.stats['skipped']==0: yield w.with_flags(algebraic=True)

def find_algebraic_product(M: Multicat,G: CartStructure,X: ObjFamily,f: FinMap) -> Optional[ProductWitness]:
    return next(iter(algebraic_products(M,G,X,f)),None)

def _pi_transported(M: Multicat,w: ProductWitness) -> LooseArrow:
    'π over the top leg of the pullback of id_J and f, the shape of π∘(f*t) for t over id_J'
    sq=fs.pullback(fs.identity(w.f.cod),w.f)
    comps={}
    for a in sq.apex:
        i=sq.top(a)
        comps[i]=M.relabel(w.pi.at(i),FinMap.of([i],[a],{i:a}))
    return LooseArrow.assemble(sq.top,w.P.along(sq.left),w.X,comps)

def comparisons(M: Multicat,w1: ProductWitness,w2: ProductWitness) -> List[LooseArrow]:
    't: P₁ → P₂ over id_J with π₂∘(f*t) = π₁'
    target=_pi_transported(M,w1)
    return [t for t in multicat.loose_homs(M,w1.P,fs.identity(w1.f.cod),w2.P) if _pi_after(M,w2,t)==target]

def canonically_isomorphic(M: Multicat,w1: ProductWitness,w2: ProductWitness) -> bool:
    'The comparisons both ways exist, are unique and are mutually inverse'
    if (w1.X,w1.f)!=(w2.X,w2.f): raise StructuralError(f'{w1.render()} and {w2.render()} are products of different data.')
    ts,ss=comparisons(M,w1,w2),comparisons(M,w2,w1)
    if len(ts)!=1 or len(ss)!=1: return False
    return multicat.compose(M,ss[0],ts[0])==multicat.identity_loose(M,w1.P) and multicat.compose(M,ts[0],ss[0])==multicat.identity_loose(M,w2.P)

def product_uniqueness_report(M: Multicat,G: CartStructure,bound: Optional[int]=None) -> Report:
    'All algebraic products of every X along every f are pairwise related by canonical isomorphisms'
    bound=GG.resolve(bound)
    rep=Report(subject=f'uniqueness of products on {M.name} with {G.name}',bound=bound)
    rep.stats['witnesses']=0
    for n in range(bound+1):
        for X in M.families(n):
            for J in fs.canonical_sets(bound):
                for f in fs.all_maps(X.index,J):
                    ws=list(algebraic_products(M,G,X,f))
                    rep.stats['witnesses']+=len(ws)
                    for w1,w2 in itertools.combinations(ws,2):
                        rep.attempt('product-uniqueness',{'X':X,'f':f,'P1':w1.P,'P2':w2.P},lambda: canonically_isomorphic(M,w1,w2),
                            'two algebraic products are not related by a canonical isomorphism')
    return rep.finish()


def ap_to_up(M: Multicat,G: CartStructure,w: ProductWitness,bound: Optional[int]=None) -> ProductWitness:
    'Every ρ over the pullback of h and f factors as π∘(f*t) with t = left_!(u∘ρ)'
    bound=GG.resolve(bound)
    if w.u is None: raise StructuralError('An algebraic product needs the arrow u.')
    for n in range(bound+1):
        for Q in M.families(n):
            for h in fs.all_maps(Q.index,w.f.cod):
                sq=fs.pullback(h,w.f)
                for rho in multicat.loose_homs(M,Q.along(sq.left),sq.top,w.X):
                    t=cartesian.push_loose(G,multicat.compose(M,w.u,rho),sq.left,h,Q)
                    if _pi_after(M,w,t)!=rho: raise TheoremViolation(f'{M.name}: t = left_!(uρ) does not factor {rho.render()} through {w.render()}.')
    if not spans.is_universal(M,w,bound): raise TheoremViolation(f'{M.name}: factorizations through {w.render()} are not unique.')
    return w.with_flags(universal=True)

def ap_to_r(M: Multicat,G: CartStructure,w: ProductWitness,bound: Optional[int]=None) -> LooseArrow:
    '''
    u is opcartesian: every v: X → B is t∘u for t = f_!(v∘π); the same holds for every
    reindexing of the witness along l: J′→J.
    '''
    bound=GG.resolve(bound)
    if w.u is None: raise StructuralError('An algebraic product needs the arrow u.')
    def factor(w):
        for B in M.objects:
            for v in M.homs(w.X,B):
                t=G.push(M.compose_conn(v,w.pi.fiber_components()),w.f,w.P)
                if M.compose_conn(t,w.u.fiber_components())!=v: raise TheoremViolation(f'{M.name}: t = f_!(vπ) does not factor {v.render()} through {w.u.render()}.')
        if not multicat._opcartesian(M,w.u): raise TheoremViolation(f'{M.name}: {w.u.render()} has factorizations but is not opcartesian.')
    factor(w)
    for J2 in fs.canonical_sets(bound):
        for l in fs.all_maps(J2,w.f.cod):
            try:
                w2=reindex_witness(M,w,l)
                if len(w2.X)>bound: continue
                if not check_algebraic_product(M,G,w2): raise TheoremViolation(f'{M.name}: reindexing {w.render()} along {l.render()} is not an algebraic product.')
                factor(w2)
            except BoundExceeded as e: log.debug(f'{M.name}: stability along {l.render()} skipped: {e}')
    return w.u

def reindex_witness(M: Multicat,w: ProductWitness,l: FinMap) -> ProductWitness:
    'The witness pulled back along l: J′→J; X′ = X∘left, P′ = P∘l, f′ = top'
    sq=fs.pullback(w.f,l)
    pi={a:M.relabel(w.pi.at(sq.left(a)),FinMap.of([sq.left(a)],[a],{sq.left(a):a})) for a in sq.apex}
    X2,P2=w.X.along(sq.left),w.P.along(l)
    pi2=LooseArrow.assemble(fs.identity(sq.apex),P2.along(sq.top),X2,pi)
    u2=None if w.u is None else multicat.reindex_loose(M,w.u,l)[0]
    return ProductWitness(X=X2,f=sq.top,P=P2,pi=pi2,u=u2)

def up_to_ap(M: Multicat,G: CartStructure,w: ProductWitness) -> ProductWitness:
    'u is the unique t with π∘(f*t) = Δ_!(id)'
    target=_diagonal_push(M,G,w.X,w.f)
    sols=[t for t in multicat.loose_homs(M,w.X,w.f,w.P) if _pi_after(M,w,t)==target]
    if len(sols)!=1: raise TheoremViolation(f'{M.name}: {len(sols)} arrows u with π∘(f*u) = Δ_!(id) for {w.render()}.')
    w2=ProductWitness(X=w.X,f=w.f,P=w.P,pi=w.pi,u=sols[0],flags=w.flags)
    if not check_algebraic_product(M,G,w2): raise TheoremViolation(f'{M.name}: the factorization u of Δ_!(id) fails the first triangle.')
    return w2.with_flags(algebraic=True)

def r_to_ap(M: Multicat,G: CartStructure,u: LooseArrow) -> ProductWitness:
    'π is the unique solution of π∘(f*u) = Δ_!(id)'
    X,f,P=u.dom,u.base,u.cod
    target=_diagonal_push(M,G,X,f)
    sols=[w for w in (ProductWitness(X=X,f=f,P=P,pi=pi,u=u) for pi in spans.projections(M,X,f,P)) if _pi_after(M,w,u)==target]
    if len(sols)!=1: raise TheoremViolation(f'{M.name}: {len(sols)} projections π with π∘(f*u) = Δ_!(id) for {u.render()}.')
    if not check_algebraic_product(M,G,sols[0]): raise TheoremViolation(f'{M.name}: the solution π for {u.render()} fails the first triangle.')
    return sols[0].with_flags(algebraic=True,representable=True)


def equivalence_table(M: Multicat,G: CartStructure,bound: Optional[int]=None,conversions: bool=False) -> List[Dict]:
    '''
    Flags algebraic/universal/representable per (X,f), each found by its own search.
    With *conversions*, every algebraic witness is also pushed through ap_to_up and ap_to_r.
    '''
    bound=GG.resolve(bound)
    rows=[]
    for n in range(bound+1):
        for X in M.families(n):
            for J in fs.canonical_sets(bound):
                for f in fs.all_maps(X.index,J):
                    ap=find_algebraic_product(M,G,X,f)
                    up=spans.find_universal_product(M,X,f,bound)
                    r=multicat.find_opcartesian(M,X,f,bound)
                    if conversions and ap is not None:
                        ap_to_up(M,G,ap,bound)
                        ap_to_r(M,G,ap,bound)
                    rows.append({'X':X.render(),'f':f.render(),'algebraic':ap is not None,'universal':up is not None,'representable':r is not None,
                        'P':None if ap is None else ap.P.render()})
    return rows

def equivalence_report(M: Multicat,G: CartStructure,bound: Optional[int]=None,conversions: bool=False) -> Report:
    'The three flags agree on every (X,f); G must pass check_cartesian first'
    bound=GG.resolve(bound)
    pre=cartesian.check_cartesian(M,G,bound)
    if not pre.ok: raise StructuralError(f'{G.name} is not a cartesian structure on {M.name}: {", ".join(sorted(pre.laws_violated()))} fail.')
    rep=Report(subject=f'product notions on {M.name} with {G.name}',bound=bound)
    rep.rows=equivalence_table(M,G,bound,conversions)
    for row in rep.rows:
        flags=(row['algebraic'],row['universal'],row['representable'])
        rep.expect(len(set(flags))==1,'three-way-agreement',{'X':row['X'],'f':row['f']},f'algebraic={flags[0]}, universal={flags[1]}, representable={flags[2]}')
        if all(flags): rep.count('products')
    return rep.finish()
