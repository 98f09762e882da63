'''
Finite categories given by tables, functors between them, discrete fibrations and the
arity-bounded family construction Fam(C).
'''
import pydantic
from typing import Tuple,Dict,List,Optional,Callable,Iterable,Any
import itertools
import functools
import sys,os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))
from common import StructuralError,LawValidationError,Report,log
import finset as fs
from finset import FinSet,FinMap


class FinCategory(pydantic.BaseModel):
    'Finite category: arrows are (id,src,tgt); composition holds (g,f,g∘f) for every composable pair.'
    model_config=pydantic.ConfigDict(frozen=True)
    objects: FinSet
    arrows: Tuple[Tuple[str,str,str],...]
    identities: Tuple[Tuple[str,str],...]
    composition: Tuple[Tuple[str,str,str],...]

    @pydantic.field_validator('arrows','identities','composition')
    @classmethod
    def sorted_rows(cls,v): return tuple(sorted(v))

    @pydantic.model_validator(mode='after')
    def tables_total(self):
        ids=[a for a,_,_ in self.arrows]
        if len(set(ids))!=len(ids): raise ValueError('Duplicate arrow ids.')
        st={a:(s,t) for a,s,t in self.arrows}
        for a,(s,t) in st.items():
            if s not in self.objects or t not in self.objects: raise ValueError(f'Arrow {a}: {s}→{t} has an endpoint outside the objects.')
        idn=dict(self.identities)
        if set(idn.keys())!=set(self.objects): raise ValueError('Identities must be given for every object (and only for objects).')
        for A,a in idn.items():
            if st.get(a)!=(A,A): raise ValueError(f'Identity {a} of {A} is not an endo-arrow of {A}.')
        comp={}
        for g,f,h in self.composition:
            if g not in st or f not in st or h not in st: raise ValueError(f'Composition row {g}∘{f}={h} mentions unknown arrows.')
            if st[f][1]!=st[g][0]: raise ValueError(f'Composition row {g}∘{f}: arrows are not composable.')
            if st[h]!=(st[f][0],st[g][1]): raise ValueError(f'Composition row {g}∘{f}={h}: wrong source/target.')
            if (g,f) in comp: raise ValueError(f'Composition {g}∘{f} given twice.')
            comp[(g,f)]=h
        into={}
        for _,t in st.values(): into[t]=into.get(t,0)+1
        if len(comp)!=sum(into.get(s,0) for s,_ in st.values()): raise ValueError('Composition is not given for every composable pair.')
        return self

    def src(self,a: str) -> str: return _index(self).st[a][0]
    def tgt(self,a: str) -> str: return _index(self).st[a][1]
    def ident(self,A: str) -> str: return _index(self).idn[A]
    def comp(self,g: str,f: str) -> str:
        try: return _index(self).comp[(g,f)]
        except KeyError: raise StructuralError(f'Arrows {g} and {f} are not composable.') from None
    def hom(self,A: str,B: str) -> Tuple[str,...]: return _index(self).hom.get((A,B),())
    def arrow_ids(self) -> Tuple[str,...]: return tuple(a for a,_,_ in self.arrows)
    def is_iso(self,a: str) -> bool:
        return any(self.comp(b,a)==self.ident(self.src(a)) and self.comp(a,b)==self.ident(self.tgt(a)) for b in self.hom(self.tgt(a),self.src(a)))

    def check_laws(self) -> Report:
        'Unit and associativity laws, exhaustively'
        rep=Report(subject='category laws',bound=0)
        for a,s,t in self.arrows:
            rep.expect(self.comp(a,self.ident(s))==a,'right-unit',{'arrow':a},f'{a}∘id_{s} ≠ {a}')
            rep.expect(self.comp(self.ident(t),a)==a,'left-unit',{'arrow':a},f'id_{t}∘{a} ≠ {a}')
        for f,_,ft in self.arrows:
            for g in self.arrows_from(ft):
                for h in self.arrows_from(self.tgt(g)):
                    rep.expect(self.comp(h,self.comp(g,f))==self.comp(self.comp(h,g),f),'associativity',{'h':h,'g':g,'f':f},'(h∘g)∘f ≠ h∘(g∘f)')
        return rep.finish()
    def arrows_from(self,A: str) -> Tuple[str,...]: return _index(self).out.get(A,())
    def validated(self) -> 'FinCategory':
        rep=self.check_laws()
        if not rep.ok: raise LawValidationError(f'Not a category: {rep.violations[0].law} fails at {rep.violations[0].instance}.')
        return self

    def to_json_obj(self) -> dict:
        return {'objects':list(self.objects.elements),'arrows':[{'id':a,'src':s,'tgt':t} for a,s,t in self.arrows],
            'identities':dict(self.identities),'composition':[{'g':g,'f':f,'result':h} for g,f,h in self.composition]}
    @staticmethod
    def from_json_obj(d: dict) -> 'FinCategory':
        return FinCategory(objects=FinSet.of(d['objects']),arrows=tuple((a['id'],a['src'],a['tgt']) for a in d['arrows']),
            identities=tuple(d['identities'].items()),composition=tuple((c['g'],c['f'],c['result']) for c in d['composition']))


class _CatIndex(object):
    def __init__(self,C: FinCategory):
        self.st={a:(s,t) for a,s,t in C.arrows}
        self.idn=dict(C.identities)
        self.comp={(g,f):h for g,f,h in C.composition}
        self.hom,self.out={},{}
        for a,s,t in C.arrows:
            self.hom[(s,t)]=self.hom.get((s,t),())+(a,)
            self.out[s]=self.out.get(s,())+(a,)

@functools.lru_cache(maxsize=256)
def _index(C: FinCategory) -> _CatIndex: return _CatIndex(C)


##
## CONSTRUCTORS
##

def from_arrows(objects: Iterable[str],arrows: Iterable[Tuple[str,str,str]],identities: Dict[str,str],rule: Callable[[str,str],str]) -> FinCategory:
    'Category whose composition table is generated by rule(g,f) on composable pairs'
    arrows=tuple(arrows)
    into={}
    for f,_,ft in arrows: into.setdefault(ft,[]).append(f)
    comp=tuple((g,f,rule(g,f)) for g,gs,_ in arrows for f in into.get(gs,()))
    return FinCategory(objects=FinSet.of(objects),arrows=arrows,identities=tuple(identities.items()),composition=comp)

def discrete(objects: Iterable[str]) -> FinCategory:
    objects=list(objects)
    return from_arrows(objects,[(f'id_{A}',A,A) for A in objects],{A:f'id_{A}' for A in objects},lambda g,f: g)

def terminal() -> FinCategory: return discrete(['*'])

def from_preorder(elements: Iterable[str],leq: Callable[[str,str],bool]) -> FinCategory:
    'Thin category with an arrow a<=b whenever leq(a,b)'
    elements=list(elements)
    arrows=[(f'{a}<={b}',a,b) for a in elements for b in elements if leq(a,b)]
    def rule(g,f): return f'{f.split("<=")[0]}<={g.split("<=")[1]}'
    return from_arrows(elements,arrows,{a:f'{a}<={a}' for a in elements},rule)

def ordinal(n: int) -> FinCategory:
    'The poset 0<1<…<n-1'
    return from_preorder([str(i) for i in range(n)],lambda a,b: int(a)<=int(b))

def from_monoid(carrier: Iterable[str],mul: Callable[[str,str],str],unit: str,obj: str='*') -> FinCategory:
    'One-object category; g∘f = mul(g,f)'
    return from_arrows([obj],[(x,obj,obj) for x in carrier],{obj:unit},mul)

def with_zeros(objects: Iterable[str],named: Iterable[Tuple[str,str,str]],rule: Dict[Tuple[str,str],str]) -> FinCategory:
    '''
    Category with a zero arrow 0_A_B in every hom; *named* are the non-zero, non-identity arrows,
    *rule* their non-zero composites (absent pairs compose to zero).
    '''
    objects,named=list(objects),list(named)
    zeros=[(f'0_{A}_{B}',A,B) for A in objects for B in objects]
    ids=[(f'id_{A}',A,A) for A in objects]
    st={a:(s,t) for a,s,t in zeros+ids+named}
    def comp(g,f):
        if g.startswith('id_'): return f
        if f.startswith('id_'): return g
        if (g,f) in rule: return rule[(g,f)]
        return f'0_{st[f][0]}_{st[g][1]}'
    return from_arrows(objects,zeros+ids+named,{A:f'id_{A}' for A in objects},comp)


class FinFunctor(pydantic.BaseModel):
    model_config=pydantic.ConfigDict(frozen=True)
    src: FinCategory
    tgt: FinCategory
    obj_map: Tuple[Tuple[str,str],...]
    arr_map: Tuple[Tuple[str,str],...]

    @pydantic.field_validator('obj_map','arr_map')
    @classmethod
    def sorted_rows(cls,v): return tuple(sorted(v))

    @pydantic.model_validator(mode='after')
    def maps_total(self):
        if set(dict(self.obj_map).keys())!=set(self.src.objects): raise ValueError('Object map must be total on the source objects.')
        if set(dict(self.arr_map).keys())!=set(self.src.arrow_ids()): raise ValueError('Arrow map must be total on the source arrows.')
        if not set(dict(self.obj_map).values())<=set(self.tgt.objects): raise ValueError('Object map leaves the target objects.')
        if not set(dict(self.arr_map).values())<=set(self.tgt.arrow_ids()): raise ValueError('Arrow map leaves the target arrows.')
        return self

    def ob(self,A: str) -> str: return _maps(self)[0][A]
    def ar(self,a: str) -> str: return _maps(self)[1][a]

    def check_laws(self) -> Report:
        rep=Report(subject='functor laws',bound=0)
        S,T=self.src,self.tgt
        for a,s,t in S.arrows:
            rep.expect((T.src(self.ar(a)),T.tgt(self.ar(a)))==(self.ob(s),self.ob(t)),'endpoints',{'arrow':a},'F does not preserve source/target')
        for A in S.objects: rep.expect(self.ar(S.ident(A))==T.ident(self.ob(A)),'identity',{'object':A},'F(id) ≠ id')
        for g,f,h in S.composition: rep.expect(self.ar(h)==T.comp(self.ar(g),self.ar(f)),'composition',{'g':g,'f':f},'F(g∘f) ≠ Fg∘Ff')
        return rep.finish()

    @staticmethod
    def identity(C: FinCategory) -> 'FinFunctor':
        return FinFunctor(src=C,tgt=C,obj_map=tuple((A,A) for A in C.objects),arr_map=tuple((a,a) for a in C.arrow_ids()))
    @staticmethod
    def to_terminal(C: FinCategory) -> 'FinFunctor':
        T=terminal()
        return FinFunctor(src=C,tgt=T,obj_map=tuple((A,'*') for A in C.objects),arr_map=tuple((a,'id_*') for a in C.arrow_ids()))


@functools.lru_cache(maxsize=256)
def _maps(F: FinFunctor): return dict(F.obj_map),dict(F.arr_map)


def is_discrete_fibration(F: FinFunctor) -> bool:
    'Every target arrow into F(e) has exactly one lift into e'
    rep=F.check_laws()
    if not rep.ok: raise LawValidationError(f'Not a functor: {rep.violations[0].law} fails at {rep.violations[0].instance}.')
    S,T=F.src,F.tgt
    for e in S.objects:
        into_e=[a for a,_,t in S.arrows if t==e]
        for b,_,bt in T.arrows:
            if bt!=F.ob(e): continue
            lifts=[a for a in into_e if F.ar(a)==b]
            if len(lifts)!=1:
                log.debug(f'{b} into {F.ob(e)} has {len(lifts)} lifts into {e}')
                return False
    return True


def elements(C: FinCategory,sets: Dict[str,List[str]],action: Dict[Tuple[str,str],str]) -> FinFunctor:
    '''
    Category of elements of the presheaf P on C with P(A)=sets[A] and x·a=action[(a,x)] for a: A→B, x ∈ P(B);
    returns the projection functor to C.
    '''
    for a,s,t in C.arrows:
        for x in sets[t]:
            if action.get((a,x)) not in sets[s]: raise LawValidationError(f'Action of {a} on {x} is missing or leaves P({s}).')
    for A in C.objects:
        for x in sets[A]:
            if action[(C.ident(A),x)]!=x: raise LawValidationError(f'Identity of {A} does not act trivially on {x}.')
    for g,f,h in C.composition:
        for x in sets[C.tgt(g)]:
            if action[(h,x)]!=action[(f,action[(g,x)])]: raise LawValidationError(f'Action is not functorial at {g}∘{f} on {x}.')
    objs=[fs.pair(A,x) for A in C.objects for x in sets[A]]
    arrows=[(fs.pair(a,y),fs.pair(s,action[(a,y)]),fs.pair(t,y)) for a,s,t in C.arrows for y in sets[t]]
    src_of={fs.pair(a,y):(a,y) for a,_,t in C.arrows for y in sets[t]}
    def rule(g,f): return fs.pair(C.comp(src_of[g][0],src_of[f][0]),src_of[g][1])
    E=from_arrows(objs,arrows,{fs.pair(A,x):fs.pair(C.ident(A),x) for A in C.objects for x in sets[A]},rule)
    return FinFunctor(src=E,tgt=C,obj_map=tuple((fs.pair(A,x),A) for A in C.objects for x in sets[A]),arr_map=tuple((ay,a) for ay,(a,_) in src_of.items()))


##
## FAMILIES
##

def fam_token(objs: Tuple[str,...]) -> str: return '['+'|'.join(objs)+']'

def fam_objects(C: FinCategory,bound: int) -> Dict[str,Tuple[str,...]]:
    'Families over {"1",…,"n"}, n ≤ bound, keyed by their token'
    return {fam_token(objs):objs for n in range(bound+1) for objs in itertools.product(C.objects.elements,repeat=n)}

def _fam_arrow(f: FinMap,alpha: Tuple[str,...],src: str,tgt: str) -> str:
    return f'{src}→{tgt};{f.render()};('+'|'.join(alpha)+')'

def _fam_arrows(C: FinCategory,bound: int) -> Iterable[Tuple[str,str,str,FinMap,Tuple[str,...]]]:
    'Every arrow of the bounded Fam(C) as (src token, tgt token, id, reindexing, components)'
    objs=fam_objects(C,bound)
    for xs,X in objs.items():
        for ys,Y in objs.items():
            I,J=FinSet.canonical(len(X)),FinSet.canonical(len(Y))
            for f in fs.all_maps(I,J):
                homs=[C.hom(X[I.position(i)],Y[J.position(f(i))]) for i in I]
                for alpha in itertools.product(*homs): yield xs,ys,_fam_arrow(f,alpha,xs,ys),f,alpha

def fam(C: FinCategory,bound: int) -> FinCategory:
    '''
    Full subcategory of Fam(C) on families indexed by {"1",…,"n"} with n ≤ bound;
    an arrow X→Y is a reindexing map f with arrows X_i → Y_f(i).
    '''
    if bound<1: raise ValueError(f'Arity bound must be ≥ 1 (not {bound}).')
    objs=fam_objects(C,bound)
    arrows,data={},{}
    for xs,ys,a,f,alpha in _fam_arrows(C,bound):
        arrows[a]=(xs,ys)
        data[a]=(f,alpha)
    def rule(g,f):
        (gm,ga),(fm,fa)=data[g],data[f]
        I=fm.dom
        alpha=tuple(C.comp(ga[gm.dom.position(fm(i))],fa[I.position(i)]) for i in I)
        return _fam_arrow(fs.compose(gm,fm),alpha,arrows[f][0],arrows[g][1])
    idn={xs:_fam_arrow(fs.identity(FinSet.canonical(len(X))),tuple(C.ident(A) for A in X),xs,xs) for xs,X in objs.items()}
    log.debug(f'fam: {len(objs)} objects, {len(arrows)} arrows at bound {bound}')
    return from_arrows(objs.keys(),[(a,s,t) for a,(s,t) in arrows.items()],idn,rule)

def fam_functor(F: FinFunctor,bound: int) -> FinFunctor:
    'Fam(F): families and their arrows mapped pointwise'
    S,T=fam(F.src,bound),fam(F.tgt,bound)
    om={fam_token(X):fam_token(tuple(F.ob(A) for A in X)) for X in fam_objects(F.src,bound).values()}
    am={a:_fam_arrow(f,tuple(F.ar(x) for x in alpha),om[xs],om[ys]) for xs,ys,a,f,alpha in _fam_arrows(F.src,bound)}
    return FinFunctor(src=S,tgt=T,obj_map=tuple(om.items()),arr_map=tuple(am.items()))


class SumWitness(pydantic.BaseModel):
    'A chosen sum: object *total* with injections from the summands'
    model_config=pydantic.ConfigDict(frozen=True)
    total: str
    summands: Tuple[str,...]
    injections: Tuple[str,...]

def check_sum_witness(D: FinCategory,w: SumWitness):
    'Raises LawValidationError unless hom(total,Z) → Π hom(summand_k,Z) is bijective for every Z'
    for k,(b,j) in enumerate(zip(w.summands,w.injections)):
        if (D.src(j),D.tgt(j))!=(b,w.total): raise LawValidationError(f'Injection {j} does not go {b} → {w.total}.')
    for Z in D.objects:
        image=[tuple(D.comp(h,j) for j in w.injections) for h in D.hom(w.total,Z)]
        expected=list(itertools.product(*[D.hom(b,Z) for b in w.summands]))
        if len(set(image))!=len(image) or set(image)!=set(expected):
            raise LawValidationError(f'{w.total} with injections {w.injections} is not a sum (fails against {Z}).')

def connected_objects(D: FinCategory,witnesses: List[SumWitness]) -> FinSet:
    'Objects A for which hom(A,-) turns every witnessed sum into a disjoint union of hom-sets'
    for w in witnesses: check_sum_witness(D,w)
    def connected(A):
        for w in witnesses:
            image=[(k,D.comp(j,c)) for k,(b,j) in enumerate(zip(w.summands,w.injections)) for c in D.hom(A,b)]
            if len(set(h for _,h in image))!=len(image) or set(h for _,h in image)!=set(D.hom(A,w.total)): return False
        return True
    return FinSet.of(A for A in D.objects if connected(A))

def _concat_injection(X: Tuple[str,...],Y: Tuple[str,...],C: FinCategory,second: bool) -> str:
    n,m=len(X),len(Y)
    S=FinSet.canonical(n+m)
    src=Y if second else X
    f=fs.FinMap.of(FinSet.canonical(len(src)),S,{str(i+1):str(i+1+(n if second else 0)) for i in range(len(src))})
    return _fam_arrow(f,tuple(C.ident(A) for A in src),fam_token(src),fam_token(X+Y))

def fam_sum_witnesses(C: FinCategory,bound: int) -> List[SumWitness]:
    'Concatenation sums of two families (total arity ≤ bound) and the empty family as the empty sum'
    objs=list(fam_objects(C,bound).values())
    ret=[SumWitness(total=fam_token(()),summands=(),injections=())]
    for X in objs:
        for Y in objs:
            if len(X)+len(Y)>bound: continue
            ret.append(SumWitness(total=fam_token(X+Y),summands=(fam_token(X),fam_token(Y)),injections=(_concat_injection(X,Y,C,False),_concat_injection(X,Y,C,True))))
    return ret

def decompose(C: FinCategory,X: Tuple[str,...]) -> SumWitness:
    'X as the sum of its singleton subfamilies'
    n=len(X)
    inj=[_fam_arrow(fs.FinMap.of(FinSet.canonical(1),FinSet.canonical(n),{'1':str(i+1)}),(C.ident(A),),fam_token((A,)),fam_token(X)) for i,A in enumerate(X)]
    return SumWitness(total=fam_token(X),summands=tuple(fam_token((A,)) for A in X),injections=tuple(inj))
