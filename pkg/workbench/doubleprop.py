'''
Base double props as oracles. A loose arrow is a map of finite sets, possibly decorated
(a total order on each fiber, a section); cells are pullback squares along which the
decoration is transported. Oracles are never enumerated as a whole; they only answer
for the loose arrows a multicategory actually touches.
'''
import pydantic
from typing import Tuple,Dict,List,Optional,Iterable,Any
import abc
import itertools
import math
import sys,os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))
from common import StructuralError,LawValidationError,GG,Report
import finset as fs
from finset import FinSet,FinMap,PbSquare,OrderedMap,SectionedMap
import multicat
from multicat import Multicat,MultiArrow


class Cell(pydantic.BaseModel):
    'Cell of a base double prop: *upper* sits over square.top, *lower* over square.f'
    model_config=pydantic.ConfigDict(frozen=True)
    upper: Any
    lower: Any
    square: PbSquare


class BaseOracle(abc.ABC):
    kind: str='Cust'

    @abc.abstractmethod
    def underlying(self,x) -> FinMap: 'The map of finite sets under x'
    @abc.abstractmethod
    def decorations(self,f: FinMap) -> List[Any]: 'All loose arrows over f'
    @abc.abstractmethod
    def identity(self,S: FinSet): pass
    @abc.abstractmethod
    def compose(self,g,f):
        'Loose composite g∘f'
    @abc.abstractmethod
    def transport(self,x,sq: PbSquare):
        'The loose arrow over sq.top induced by x over sq.f = underlying(x)'
    @abc.abstractmethod
    def sum(self,xs: List[Any]): pass

    def __repr__(self): return f'<{self.kind} oracle>'
    def is_loose(self,x) -> bool:
        try: return x in self.decorations(self.underlying(x))
        except (AttributeError,TypeError): return False
    def loose_arrows(self,I: FinSet,J: FinSet) -> Iterable[Any]:
        for f in fs.all_maps(I,J): yield from self.decorations(f)
    def cell(self,x,l: FinMap) -> Cell:
        'The cartesian cell with lower side x and bottom edge l'
        sq=fs.pullback(self.underlying(x),l)
        return Cell(upper=self.transport(x,sq),lower=x,square=sq)
    def is_cell(self,c: Cell) -> bool:
        return c.square.f==self.underlying(c.lower) and c.square.top==self.underlying(c.upper) and c.square.is_pullback() and c.upper==self.transport(c.lower,c.square)

    def paste_loose(self,lower: Cell,upper: Cell) -> Cell:
        'Cells over composable loose arrows f (lower) and h (upper) stacked into the cell of h∘f'
        sq=fs.paste(lower.square,upper.square)
        return Cell(upper=self.compose(upper.upper,lower.upper),lower=self.compose(upper.lower,lower.lower),square=sq)
    def paste_tight(self,first: Cell,second: Cell) -> Cell:
        'The cell along l1 followed by the cell along l2 (second.lower = first.upper): the cell along l1∘l2'
        if second.lower!=first.upper: raise StructuralError('Cells do not compose along the tight direction.')
        a,b=first.square,second.square
        return Cell(upper=second.upper,lower=first.lower,square=PbSquare(f=a.f,g=fs.compose(a.g,b.g),apex=b.apex,top=b.top,left=fs.compose(a.left,b.left)))

    def check(self,bound: Optional[int]=None) -> Report:
        '''
        Loose composition unital and associative; pasted cells are the cells of the composites
        (interchange); sums are preserved by source and target.
        '''
        bound=GG.resolve(bound)
        rep=Report(subject=f'double prop {self.kind}',bound=bound)
        sets=list(fs.canonical_sets(bound))
        for I,J in itertools.product(sets,sets):
            for x in self.loose_arrows(I,J):
                rep.expect(self.compose(x,self.identity(I))==x and self.compose(self.identity(J),x)==x,'loose-unit',{'x':x},'identity is not neutral')
                for K in sets:
                    for y in self.loose_arrows(J,K):
                        for L in sets[:2]:
                            for z in self.loose_arrows(K,L):
                                rep.expect(self.compose(z,self.compose(y,x))==self.compose(self.compose(z,y),x),'loose-associativity',{'x':x,'y':y,'z':z},'(zy)x ≠ z(yx)')
                        for l in fs.all_maps(FinSet.canonical(min(2,bound)),K):
                            cy=self.cell(y,l)
                            cx=self.cell(x,cy.square.left)
                            pasted=self.paste_loose(cx,cy)
                            direct=self.cell(self.compose(y,x),l)
                            rep.expect(self.is_cell(pasted) and _same_cell(self,pasted,direct),'interchange',{'x':x,'y':y,'l':l},'pasting the cells of x and y differs from the cell of y∘x')
                for l1 in fs.all_maps(FinSet.canonical(min(2,bound)),J):
                    c1=self.cell(x,l1)
                    for l2 in fs.all_maps(FinSet.canonical(1),l1.dom):
                        rep.expect(_same_cell(self,self.paste_tight(c1,self.cell(c1.upper,l2)),self.cell(x,fs.compose(l1,l2))),'tight-pasting',{'x':x,'l1':l1,'l2':l2},'cells along l1 then l2 differ from the cell along l1∘l2')
        for I1,J1,I2,J2 in itertools.product(sets[:3],repeat=4):
            for x1 in self.loose_arrows(I1,J1):
                for x2 in self.loose_arrows(I2,J2):
                    s=self.sum([x1,x2])
                    rep.expect(self.underlying(s)==fs.sum([self.underlying(x1),self.underlying(x2)]) and self.is_loose(s),'sums',{'x1':x1,'x2':x2},'sum of loose arrows is not over the sum of sources and targets')
        return rep.finish()


def _same_cell(P: BaseOracle,a: Cell,b: Cell) -> bool:
    'Equal after moving the apex of a onto the apex of b'
    if a.lower!=b.lower or a.square.g!=b.square.g: return False
    iso=fs.compose(fs.inverse(b.square.to_canonical()),a.square.to_canonical())
    if not iso.is_bijective(): return False
    return fs.relabel_square(a.square,iso)==b.square and P.relabel(a.upper,iso)==b.upper

def _pb_point(sq: PbSquare):
    'apex element by its (left,top) images'
    return {(sq.left(a),sq.top(a)):a for a in sq.apex}


class PbOracle(BaseOracle):
    kind='Pb'
    def underlying(self,x): return x
    def decorations(self,f): return [f]
    def identity(self,S): return fs.identity(S)
    def compose(self,g,f): return fs.compose(g,f)
    def transport(self,x,sq): return sq.top
    def sum(self,xs): return fs.sum(xs)
    def relabel(self,x,iso): return fs.compose(x,fs.inverse(iso))

class BijOracle(PbOracle):
    kind='Bij'
    def decorations(self,f): return [f] if f.is_bijective() else []

class TotOracle(BaseOracle):
    'Fibers totally ordered; composition glues the inner orders along the outer one'
    kind='Tot'
    def underlying(self,x): return x.base
    def decorations(self,f):
        ff=fs.fibers(f)
        cod=f.cod.elements
        return [OrderedMap.of(f,dict(zip(cod,oo))) for oo in itertools.product(*[list(itertools.permutations(ff[j].elements)) for j in cod])]
    def identity(self,S): return OrderedMap.sorted_on(fs.identity(S))
    def compose(self,g,f):
        if f.base.cod!=g.base.dom: raise StructuralError('Ordered maps are not composable.')
        return OrderedMap.of(fs.compose(g.base,f.base),{k:tuple(i for j in g.order(k) for i in f.order(j)) for k in g.base.cod})
    def transport(self,x,sq):
        pt=_pb_point(sq)
        return OrderedMap.of(sq.top,{jj:tuple(pt[(k,jj)] for k in x.order(sq.g(jj))) for jj in sq.g.dom})
    def sum(self,xs):
        return OrderedMap.of(fs.sum([x.base for x in xs]),{fs.tag(n,j):tuple(fs.tag(n,i) for i in x.order(j)) for n,x in enumerate(xs) for j in x.base.cod})
    def relabel(self,x,iso):
        return OrderedMap.of(fs.compose(x.base,fs.inverse(iso)),{j:tuple(iso(i) for i in x.order(j)) for j in x.base.cod})

class SecOracle(BaseOracle):
    'Maps with a section; sections compose and pull back'
    kind='Sec'
    def underlying(self,x): return x.base
    def decorations(self,f):
        ff=fs.fibers(f)
        cod=f.cod.elements
        return [SectionedMap(base=f,section=FinMap.of(f.cod,f.dom,dict(zip(cod,ss)))) for ss in itertools.product(*[ff[j].elements for j in cod])]
    def identity(self,S): return SectionedMap(base=fs.identity(S),section=fs.identity(S))
    def compose(self,g,f):
        if f.base.cod!=g.base.dom: raise StructuralError('Sectioned maps are not composable.')
        return SectionedMap(base=fs.compose(g.base,f.base),section=fs.compose(f.section,g.section))
    def transport(self,x,sq):
        pt=_pb_point(sq)
        return SectionedMap(base=sq.top,section=FinMap.of(sq.g.dom,sq.apex,{jj:pt[(x.section(sq.g(jj)),jj)] for jj in sq.g.dom}))
    def sum(self,xs):
        return SectionedMap(base=fs.sum([x.base for x in xs]),section=fs.sum([x.section for x in xs]))
    def relabel(self,x,iso):
        return SectionedMap(base=fs.compose(x.base,fs.inverse(iso)),section=fs.compose(iso,x.section))

def oracle_pb() -> PbOracle: return PbOracle()
def oracle_bij() -> BijOracle: return BijOracle()
def oracle_tot() -> TotOracle: return TotOracle()
def oracle_sec() -> SecOracle: return SecOracle()

ORACLES={'Pb':oracle_pb,'Bij':oracle_bij,'Tot':oracle_tot,'Sec':oracle_sec}


class BaseMorphism(object):
    'Morphism of base double props that forgets decorations'
    def __init__(self,src: BaseOracle,tgt: BaseOracle):
        if tgt.kind!='Pb' and src.kind!=tgt.kind: raise StructuralError(f'No built-in morphism {src.kind}→{tgt.kind}.')
        self.src,self.tgt=src,tgt
    def __repr__(self): return f'<{self.src.kind}→{self.tgt.kind}>'
    def translate(self,x): return self.src.underlying(x) if self.tgt.kind=='Pb' else x
    def check(self,bound: Optional[int]=None) -> Report:
        'Preserves identities, composition and sums; every cell of the target lifts uniquely to the source'
        bound=GG.resolve(bound)
        rep=Report(subject=f'base morphism {self.src.kind}→{self.tgt.kind}',bound=bound)
        S,T=self.src,self.tgt
        sets=list(fs.canonical_sets(bound))
        for I,J in itertools.product(sets,sets):
            rep.expect(self.translate(S.identity(I))==T.identity(I),'identity',{'I':I},'identities are not preserved')
            for x in S.loose_arrows(I,J):
                for K in sets:
                    for y in S.loose_arrows(J,K):
                        rep.expect(self.translate(S.compose(y,x))==T.compose(self.translate(y),self.translate(x)),'composition',{'x':x,'y':y},'composites are not preserved')
                for J2 in sets:
                    for l in fs.all_maps(J2,J):
                        sq=fs.pullback(S.underlying(x),l)
                        lifts=[u for u in S.decorations(sq.top) if S.is_cell(Cell(upper=u,lower=x,square=sq))]
                        rep.expect(len(lifts)==1,'unique-lift',{'x':x,'l':l},f'{len(lifts)} lifts of the cell along l')
                for y in S.loose_arrows(I,J):
                    rep.expect(self.translate(S.sum([x,y]))==T.sum([self.translate(x),self.translate(y)]),'sums',{'x':x,'y':y},'sums are not preserved')
        return rep.finish()


##
## BASE CHANGE
##

class TotLiftMulticat(Multicat):
    'T*M: arrows of M with a chosen total order on their inputs'
    def __init__(self,M: Multicat):
        self.M,self.name,self.objects,self.bound,self.base=M,f'T*({M.name})',M.objects,M.bound,'Tot'
    @staticmethod
    def _arrow(alpha: MultiArrow,order: Tuple[str,...]) -> MultiArrow:
        return MultiArrow(id=f'{alpha.id}⟨{",".join(order)}⟩',dom=alpha.dom,cod=alpha.cod,data=(alpha,order))
    def homs(self,dom,cod): return [self._arrow(a,o) for a in self.M.homs(dom,cod) for o in itertools.permutations(dom.index.elements)]
    def identity(self,A,token='1'): return self._arrow(self.M.identity(A,token),(token,))
    def act(self,alpha,sigma):
        self.check_act(alpha,sigma)
        a,o=alpha.data
        inv=fs.inverse(sigma)
        return self._arrow(self.M.act(a,sigma),tuple(inv(i) for i in o))
    def compose_conn(self,beta,comps):
        self.check_compose(beta,comps)
        b,o=beta.data
        return self._arrow(self.M.compose_conn(b,{j:c.data[0] for j,c in comps.items()}),tuple(i for j in o for i in comps[j].data[1]))

def forget_order(alpha: MultiArrow) -> MultiArrow:
    'Counit of T_! ⊣ T*: drop the order'
    return alpha.data[0]

class UnaryPart(Multicat):
    'U*M: only the unary arrows of M (base Bij)'
    def __init__(self,M: Multicat):
        self.M,self.name,self.objects,self.bound,self.base=M,f'U*({M.name})',M.objects,M.bound,'Bij'
    def homs(self,dom,cod): return self.M.homs(dom,cod) if len(dom)==1 else []
    def identity(self,A,token='1'): return self.M.identity(A,token)
    def act(self,alpha,sigma): return self.M.act(alpha,sigma)
    def compose_conn(self,beta,comps): return self.M.compose_conn(beta,comps)

def base_change(M: Multicat,F: BaseMorphism,bound: Optional[int]=None) -> Multicat:
    '''
    Pullback of M → Pb along F: P′ → Pb, for F the identity, Tot→Pb (attach every total
    order) or Bij→Pb (keep the unary arrows).
    '''
    if F.tgt.kind!=M.base: raise StructuralError(f'{M.name} lives over {M.base}, the morphism lands in {F.tgt.kind}.')
    rep=multicat.validate(M,bound)
    if not rep.ok: raise LawValidationError(f'{M.name} is not a multicategory: {rep.violations[0].law} fails at {rep.violations[0].instance}.')
    if F.src.kind==F.tgt.kind: return M
    if F.src.kind=='Tot': return TotLiftMulticat(M)
    if F.src.kind=='Bij': return UnaryPart(M)
    raise StructuralError(f'Base change along {F.src.kind}→{F.tgt.kind} is not available.')

def check_tot_adjunction(M: Multicat,bound: Optional[int]=None) -> Report:
    'Forgetting the orders of T*M hits every arrow of M exactly |I|! times'
    bound=GG.resolve(bound)
    T=TotLiftMulticat(M)
    rep=Report(subject=f'T_! ⊣ T* on {M.name}',bound=bound)
    for n in range(bound+1):
        for X in M.families(n):
            for B in M.objects:
                lifted=[forget_order(a) for a in T.homs(X,B)]
                rep.expect(all(lifted.count(a)==math.factorial(n) for a in M.homs(X,B)) and len(lifted)==math.factorial(n)*len(M.homs(X,B)),
                    'triangle',{'X':X,'B':B},f'forgetting orders is not {math.factorial(n)}-to-one')
    return rep.finish()
