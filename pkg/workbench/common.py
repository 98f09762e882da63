import pydantic
from typing import Literal,Optional,List,Dict,Any
import os
import json
import logging
import time

import rich.logging

logging.basicConfig(format='%(message)s',datefmt='[%X]',handlers=[rich.logging.RichHandler(rich_tracebacks=False,show_path=False)])
log=logging.getLogger('workbench')
log.setLevel(os.environ.get('MULTICAT_LOGLEVEL','WARNING').upper())


##
## ERRORS
##

class StructuralError(ValueError):
    'Malformed input: non-total table, mismatched (co)domains, non-bijective relabelling.'

class LawValidationError(ValueError):
    'An input structure (monoid, rig, enrichment, functor, sum witness) violates its own axioms.'

class BoundExceeded(RuntimeError):
    'A construction needs an arity above the bound of a tabulated multicategory.'

class TheoremViolation(RuntimeError):
    'A constructive conversion between product notions failed; always an implementation bug.'


class GG(object):
    '''Global (static) settings, used throughout.'''
    _bound=None

    @staticmethod
    def bound() -> int:
        if GG._bound is not None: return GG._bound
        b=int(os.environ.get('MULTICAT_BOUND','3'))
        if b<0: raise ValueError(f'MULTICAT_BOUND must be non-negative (not {b}).')
        return b
    @staticmethod
    def bound_set(b: Optional[int]):
        if b is not None and b<0: raise ValueError(f'Arity bound must be non-negative (not {b}).')
        GG._bound=b
    @staticmethod
    def resolve(b: Optional[int]) -> int:
        return GG.bound() if b is None else b
    @staticmethod
    def verbosity_set(v: int):
        log.setLevel({0:logging.WARNING,1:logging.INFO}.get(v,logging.DEBUG))


def render(x) -> str:
    'Text form of anything appearing in a violation instance'
    if hasattr(x,'render'): return x.render()
    if isinstance(x,dict): return '{'+','.join(f'{k}:{render(v)}' for k,v in sorted(x.items()))+'}'
    if isinstance(x,(list,tuple)): return '['+','.join(render(v) for v in x)+']'
    return str(x)


##
## REPORTS
##

class Violation(pydantic.BaseModel):
    model_config=pydantic.ConfigDict(frozen=True)
    law: str
    instance: Dict[str,str]
    explanation: str
    def sort_key(self): return (self.law,tuple(sorted(self.instance.items())),self.explanation)

class Report(pydantic.BaseModel):
    'Result of an exhaustive check; status pass iff violations is empty.'
    subject: str
    bound: int
    status: Literal['pass','fail','bound-exceeded']='pass'
    violations: List[Violation]=[]
    stats: Dict[str,int]=pydantic.Field(default_factory=lambda: {'instances':0,'skipped':0})
    rows: List[Dict[str,Any]]=pydantic.Field(default_factory=list)
    elapsed: float=pydantic.Field(default=0.,exclude=True)
    started: float=pydantic.Field(default_factory=time.perf_counter,exclude=True)

    def count(self,law: Optional[str]=None,n=1):
        self.stats['instances']+=n
        if law is not None: self.stats[f'instances:{law}']=self.stats.get(f'instances:{law}',0)+n
    def skip(self,law: str,why: str=''):
        self.stats['skipped']+=1
        log.debug(f'{self.subject}: skipped {law} instance {why}')
    def expect(self,cond: bool,law: str,instance: Dict[str,Any],explanation: str) -> bool:
        'Count one instance of *law*; record a violation if *cond* is false. Returns cond.'
        self.count(law)
        if not cond: self.violations.append(Violation(law=law,instance={k:render(v) for k,v in instance.items()},explanation=explanation))
        return cond
    def attempt(self,law: str,instance: Dict[str,Any],check,explanation: str) -> Optional[bool]:
        'Like expect, with *check* evaluated lazily; BoundExceeded skips the instance (returns None).'
        try: cond=check()
        except BoundExceeded as e:
            self.skip(law,str(e))
            return None
        return self.expect(cond,law,instance,explanation)
    def merge(self,other: 'Report',prefix: str=''):
        for v in other.violations: self.violations.append(v if not prefix else Violation(law=prefix+v.law,instance=v.instance,explanation=v.explanation))
        for k,n in other.stats.items(): self.stats[k]=self.stats.get(k,0)+n
        if other.status=='bound-exceeded': self.status='bound-exceeded'
        return self
    def laws_violated(self) -> set: return {v.law for v in self.violations}
    def finish(self):
        self.violations=sorted({v.sort_key():v for v in self.violations}.values(),key=Violation.sort_key)
        if self.status!='bound-exceeded': self.status=('fail' if self.violations else 'pass')
        self.elapsed=time.perf_counter()-self.started
        log.info(f'{self.subject}: {self.status}, {self.stats["instances"]} instances, {len(self.violations)} violations')
        return self
    @property
    def ok(self) -> bool: return self.status=='pass'
    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode='json'),sort_keys=True,indent=2)
    def to_text(self) -> str:
        import rich.console, rich.table
        con=rich.console.Console(record=True,width=120,file=open(os.devnull,'w'))
        con.print(f'[bold]{self.subject}[/bold] (bound {self.bound}): [{"green" if self.ok else "red"}]{self.status}[/] in {self.elapsed:.2f}s')
        tab=rich.table.Table('statistic','count')
        for k,n in sorted(self.stats.items()): tab.add_row(k,str(n))
        con.print(tab)
        if self.violations:
            vt=rich.table.Table('law','instance','explanation')
            for v in self.violations: vt.add_row(v.law,'\n'.join(f'{k} = {s}' for k,s in sorted(v.instance.items())),v.explanation)
            con.print(vt)
        if self.rows:
            cols=sorted({k for r in self.rows for k in r})
            rt=rich.table.Table(*cols)
            for r in self.rows: rt.add_row(*[render(r.get(k,"")) for k in cols])
            con.print(rt)
        return con.export_text()
