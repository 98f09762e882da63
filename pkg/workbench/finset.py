'''
Finite sets of string tokens, mappings between them, canonical pullbacks, tagged sums,
fibers and the fiber decorations (total orders, sections) used by the base double props.

All values are frozen pydantic models; equality is structural, so every construction
produces its result in a canonical form (sorted tokens, pair tokens ``(i,l)`` for pullback
apexes, ``k:t`` tags for sums).
'''
import pydantic
from typing import Tuple,Dict,List,Iterable,Optional,Mapping,Union
import itertools
import functools
import sys,os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))
from common import StructuralError


class FinSet(pydantic.BaseModel):
    'Finite set of opaque tokens, stored in token order (numbers numerically, then the rest lexicographically).'
    model_config=pydantic.ConfigDict(frozen=True)
    elements: Tuple[str,...]=()

    @pydantic.field_validator('elements')
    @classmethod
    def elements_canonical(cls,v):
        if len(set(v))!=len(v): raise ValueError(f'Duplicate tokens in {v}.')
        return tuple(sorted(v,key=token_key))

    @staticmethod
    def of(tokens: Iterable[str]=()) -> 'FinSet':
        return FinSet(elements=tuple(tokens))
    @staticmethod
    def canonical(n: int) -> 'FinSet':
        'The standard n-element set {"1",…,"n"}'
        return FinSet(elements=tuple(str(i) for i in range(1,n+1)))
    def __len__(self): return len(self.elements)
    def __iter__(self): return iter(self.elements)
    def __contains__(self,t): return t in _positions(self)
    def position(self,t) -> int: return _positions(self)[t]
    def is_canonical(self) -> bool: return self==FinSet.canonical(len(self))
    def render(self) -> str: return '{'+','.join(self.elements)+'}'

def token_key(t: str):
    'Numeric tokens first, in numeric order; the rest lexicographically'
    return (0,int(t),t) if t.isdigit() else (1,0,t)

SetLike=Union[FinSet,Iterable[str]]
def _as_set(s: SetLike) -> FinSet: return s if isinstance(s,FinSet) else FinSet.of(s)

@functools.lru_cache(maxsize=1<<16)
def _positions(S: FinSet) -> Dict[str,int]: return {t:i for i,t in enumerate(S.elements)}


class FinMap(pydantic.BaseModel):
    'Total mapping dom → cod; table is sorted by domain token.'
    model_config=pydantic.ConfigDict(frozen=True)
    dom: FinSet
    cod: FinSet
    table: Tuple[Tuple[str,str],...]

    @pydantic.field_validator('table')
    @classmethod
    def table_sorted(cls,v): return tuple(sorted(v,key=lambda r: token_key(r[0])))

    @pydantic.model_validator(mode='after')
    def table_total(self):
        if tuple(i for i,_ in self.table)!=self.dom.elements: raise ValueError(f'Table {self.table} is not total on (or exceeds) the domain {self.dom.render()}.')
        for i,j in self.table:
            if j not in self.cod: raise ValueError(f'Image {j} of {i} is not in the codomain {self.cod.render()}.')
        return self

    @staticmethod
    def of(dom: SetLike,cod: SetLike,mapping: Mapping[str,str]) -> 'FinMap':
        dom=_as_set(dom)
        return FinMap(dom=dom,cod=_as_set(cod),table=tuple((i,mapping[i]) for i in dom))
    def __call__(self,i: str) -> str: return _lookup(self)[i]
    def as_dict(self) -> Dict[str,str]: return dict(self.table)
    def image(self) -> FinSet: return FinSet.of(set(j for _,j in self.table))
    def is_injective(self) -> bool: return len(self.image())==len(self.dom)
    def is_surjective(self) -> bool: return len(self.image())==len(self.cod)
    def is_bijective(self) -> bool: return self.is_injective() and self.is_surjective()
    def is_identity(self) -> bool: return self.dom==self.cod and all(i==j for i,j in self.table)
    def render(self) -> str: return '{'+','.join(f'{i}↦{j}' for i,j in self.table)+'}'

@functools.lru_cache(maxsize=1<<16)
def _lookup(f: FinMap) -> Dict[str,str]: return dict(f.table)


def identity(S: SetLike) -> FinMap:
    S=_as_set(S)
    return FinMap(dom=S,cod=S,table=tuple((t,t) for t in S))

def compose(g: FinMap,f: FinMap) -> FinMap:
    'g∘f'
    if f.cod!=g.dom: raise StructuralError(f'Cannot compose: codomain {f.cod.render()} differs from domain {g.dom.render()}.')
    return FinMap(dom=f.dom,cod=g.cod,table=tuple((i,g(j)) for i,j in f.table))

def inverse(f: FinMap) -> FinMap:
    if not f.is_bijective(): raise StructuralError(f'Map {f.render()} is not bijective.')
    return FinMap(dom=f.cod,cod=f.dom,table=tuple((j,i) for i,j in f.table))

def restrict(f: FinMap,sub: SetLike,cod: Optional[SetLike]=None) -> FinMap:
    'Restriction of f to sub ⊆ dom, optionally corestricted to cod ⊇ f(sub).'
    sub=_as_set(sub)
    for i in sub:
        if i not in f.dom: raise StructuralError(f'{i} is not in the domain {f.dom.render()}.')
    return FinMap(dom=sub,cod=(f.cod if cod is None else _as_set(cod)),table=tuple((i,f(i)) for i in sub))

def empty_map(cod: SetLike=()) -> FinMap:
    return FinMap(dom=FinSet(),cod=_as_set(cod),table=())

def constant(dom: SetLike,target: str='*') -> FinMap:
    'The unique map from dom to the singleton {target}'
    dom=_as_set(dom)
    return FinMap(dom=dom,cod=FinSet.of([target]),table=tuple((i,target) for i in dom))

def order_iso(S: SetLike) -> FinMap:
    'Order-preserving bijection S → {"1",…,"|S|"}'
    S=_as_set(S)
    return FinMap(dom=S,cod=FinSet.canonical(len(S)),table=tuple((t,str(k+1)) for k,t in enumerate(S)))


##
## FIBERS, SUMS, PULLBACKS
##

def fiber(f: FinMap,j: str) -> FinSet:
    if j not in f.cod: raise StructuralError(f'{j} is not in the codomain {f.cod.render()}.')
    return FinSet.of(i for i,jj in f.table if jj==j)

def fibers(f: FinMap) -> Dict[str,FinSet]:
    ret={j:[] for j in f.cod}
    for i,j in f.table: ret[j].append(i)
    return {j:FinSet.of(ii) for j,ii in ret.items()}

def tag(k: int,t: str) -> str: return f'{k}:{t}'

def sum_sets(sets: List[SetLike]) -> FinSet:
    return FinSet.of(tag(k,t) for k,S in enumerate(sets) for t in _as_set(S))

def injection(sets: List[SetLike],k: int) -> FinMap:
    'k-th coproduct injection into sum_sets(sets)'
    S=_as_set(sets[k])
    return FinMap(dom=S,cod=sum_sets(sets),table=tuple((t,tag(k,t)) for t in S))

def sum(maps: List[FinMap]) -> FinMap:
    'Disjoint union of maps; the k-th summand is tagged "k:"'
    return FinMap(dom=sum_sets([f.dom for f in maps]),cod=sum_sets([f.cod for f in maps]),
        table=tuple((tag(k,i),tag(k,j)) for k,f in enumerate(maps) for i,j in f.table))

def pair(i: str,l: str) -> str: return f'({i},{l})'


class PbSquare(pydantic.BaseModel):
    '''
    Pullback square

        apex --top--> g.dom
         |             |
        left           g
         v             v
        f.dom ---f---> f.cod
    '''
    model_config=pydantic.ConfigDict(frozen=True)
    f: FinMap
    g: FinMap
    top: FinMap
    left: FinMap
    apex: FinSet

    @pydantic.model_validator(mode='after')
    def legs_match(self):
        if self.f.cod!=self.g.cod: raise ValueError('f and g must share the codomain.')
        if self.top.dom!=self.apex or self.left.dom!=self.apex: raise ValueError('Legs must start at the apex.')
        if self.top.cod!=self.g.dom or self.left.cod!=self.f.dom: raise ValueError('Legs must end at dom g (top) and dom f (left).')
        if compose(self.g,self.top)!=compose(self.f,self.left): raise ValueError('Square does not commute.')
        return self

    def to_canonical(self) -> FinMap:
        'apex → canonical apex, x ↦ (left x, top x); bijective iff the square is a pullback'
        return FinMap(dom=self.apex,cod=pullback(self.f,self.g).apex,table=tuple((x,pair(self.left(x),self.top(x))) for x in self.apex))
    def is_pullback(self) -> bool:
        # commutativity is enforced on construction, so x ↦ (left x, top x) lands in the canonical apex
        return self.to_canonical().is_bijective()
    def is_canonical(self) -> bool: return self==pullback(self.f,self.g)
    def render(self) -> str: return f'pb(f={self.f.render()}, g={self.g.render()}; apex={self.apex.render()})'


def pullback(f: FinMap,g: FinMap) -> PbSquare:
    'Canonical pullback of f and g: apex {(i,l) | f(i)=g(l)}, top/left the projections'
    if f.cod!=g.cod: raise StructuralError(f'Cannot pull back: codomains {f.cod.render()} and {g.cod.render()} differ.')
    pairs=[(i,l) for i in f.dom for l in g.dom if f(i)==g(l)]
    apex=FinSet.of(pair(i,l) for i,l in pairs)
    return PbSquare(f=f,g=g,apex=apex,
        top=FinMap(dom=apex,cod=g.dom,table=tuple((pair(i,l),l) for i,l in pairs)),
        left=FinMap(dom=apex,cod=f.dom,table=tuple((pair(i,l),i) for i,l in pairs)))

def relabel_square(sq: PbSquare,iso: FinMap) -> PbSquare:
    'The same square with its apex renamed along the bijection iso: apex → S'
    inv=inverse(iso)
    return PbSquare(f=sq.f,g=sq.g,apex=iso.cod,top=compose(sq.top,inv),left=compose(sq.left,inv))

def canonical_form(sq: PbSquare) -> PbSquare:
    return relabel_square(sq,sq.to_canonical())

def swap(sq: PbSquare) -> PbSquare:
    'The transposed square (f and g exchanged)'
    return PbSquare(f=sq.g,g=sq.f,apex=sq.apex,top=sq.left,left=sq.top)

def paste(lower: PbSquare,upper: PbSquare) -> PbSquare:
    '''
    Vertical pasting: *upper* is a pullback of h along l (h: J→K), *lower* a pullback of f
    along upper.left (f: I→J); the result is the square of h∘f along l.
    '''
    if lower.g!=upper.left: raise StructuralError('Squares do not paste: the right side of the lower square must be the left leg of the upper one.')
    return PbSquare(f=compose(upper.f,lower.f),g=upper.g,apex=lower.apex,top=compose(upper.top,lower.top),left=lower.left)

def diagonal(f: FinMap) -> FinMap:
    'Δ: dom f → apex of pullback(f,f), i ↦ (i,i)'
    return FinMap(dom=f.dom,cod=pullback(f,f).apex,table=tuple((i,pair(i,i)) for i in f.dom))


##
## DECORATED MAPS
##

class OrderedMap(pydantic.BaseModel):
    'Map with a total order on each fiber (loose arrow of Tot)'
    model_config=pydantic.ConfigDict(frozen=True)
    base: FinMap
    fiber_orders: Tuple[Tuple[str,Tuple[str,...]],...]

    @pydantic.field_validator('fiber_orders')
    @classmethod
    def orders_sorted(cls,v): return tuple(sorted(v,key=lambda r: token_key(r[0])))

    @pydantic.model_validator(mode='after')
    def orders_are_fibers(self):
        orders=dict(self.fiber_orders)
        if set(orders.keys())!=set(self.base.cod): raise ValueError(f'Fiber orders must be given for every token of {self.base.cod.render()}.')
        for j,ff in fibers(self.base).items():
            if tuple(sorted(orders[j],key=token_key))!=ff.elements: raise ValueError(f'Order {orders[j]} is not a permutation of the fiber {ff.render()} over {j}.')
        return self

    @staticmethod
    def of(base: FinMap,orders: Mapping[str,Iterable[str]]) -> 'OrderedMap':
        return OrderedMap(base=base,fiber_orders=tuple((j,tuple(orders[j])) for j in base.cod))
    @staticmethod
    def sorted_on(base: FinMap) -> 'OrderedMap':
        'Each fiber in token order'
        return OrderedMap.of(base,{j:ff.elements for j,ff in fibers(base).items()})
    def order(self,j: str) -> Tuple[str,...]: return dict(self.fiber_orders)[j]
    def render(self) -> str: return '{'+','.join(f'{j}:[{",".join(o)}]' for j,o in self.fiber_orders)+'}'


class SectionedMap(pydantic.BaseModel):
    'Map with a section (loose arrow of Sec)'
    model_config=pydantic.ConfigDict(frozen=True)
    base: FinMap
    section: FinMap

    @pydantic.model_validator(mode='after')
    def is_section(self):
        if self.section.dom!=self.base.cod or self.section.cod!=self.base.dom: raise ValueError('The section must go cod → dom.')
        if not compose(self.base,self.section).is_identity(): raise ValueError(f'{self.section.render()} is not a section of {self.base.render()}.')
        return self
    def render(self) -> str: return f'{self.base.render()} with section {self.section.render()}'


##
## ENUMERATION
##

def all_maps(dom: SetLike,cod: SetLike) -> Iterable[FinMap]:
    dom,cod=_as_set(dom),_as_set(cod)
    for images in itertools.product(cod.elements,repeat=len(dom)):
        yield FinMap(dom=dom,cod=cod,table=tuple(zip(dom.elements,images)))

def bijections(dom: SetLike,cod: SetLike) -> Iterable[FinMap]:
    dom,cod=_as_set(dom),_as_set(cod)
    if len(dom)!=len(cod): return
    for images in itertools.permutations(cod.elements):
        yield FinMap(dom=dom,cod=cod,table=tuple(zip(dom.elements,images)))

def permutations(S: SetLike) -> Iterable[FinMap]: return bijections(S,S)

def canonical_sets(bound: int,start: int=0) -> Iterable[FinSet]:
    for n in range(start,bound+1): yield FinSet.canonical(n)

def all_maps_upto(bound: int) -> Iterable[FinMap]:
    'Every map between canonical sets of size ≤ bound'
    for I in canonical_sets(bound):
        for J in canonical_sets(bound): yield from all_maps(I,J)
