'''
Command-line front end. Every subcommand turns its documents into library objects, runs
one checker and prints its report (JSON with sorted keys, or rich text).

Exit codes: 0 pass, 1 violations, 2 input error, 3 bound exceeded.
'''
from typing import List,Optional
import argparse
import json
import sys,os
import traceback
import pydantic
sys.path.append(os.path.dirname(os.path.abspath(__file__)))
from common import StructuralError,LawValidationError,BoundExceeded,GG,Report,log
import multicat
import cartesian
import doubleprop
import products
import corpus
from corpus import WorkbenchDoc


def _bound(args,doc: WorkbenchDoc) -> int:
    return GG.resolve(args.bound if args.bound is not None else doc.arity_bound)

def _theory(args):
    doc=corpus.resolve(args.doc)
    bound=_bound(args,doc)
    M,native=corpus.decode_multicat(doc,bound)
    return M,native,bound

def _structure(args,M,native,bound):
    return corpus.decode_cart(M,native,corpus.resolve(args.gamma),bound)


##
## SUBCOMMANDS
##

def cmd_validate(args) -> Report:
    doc=corpus.resolve(args.doc)
    bound=_bound(args,doc)
    if doc.kind=='multicat': return multicat.validate(corpus.decode_multicat(doc,bound)[0],bound)
    if doc.kind in ('category','rig','comm_monoid'): return corpus.decode(doc).check_laws()
    if doc.kind=='cmon_category':
        E=corpus.decode(doc)
        return Report(subject='commutative-monoid enriched category',bound=0).merge(E.category.check_laws()).merge(E.check_laws()).finish()
    raise StructuralError(f'A {doc.kind} document is checked against a multicategory; use check-cartesian or check-model.')

def cmd_check_cartesian(args) -> Report:
    M,native,bound=_theory(args)
    return cartesian.check_cartesian(M,_structure(args,M,native,bound),bound)

def cmd_free_cartesian(args) -> Report:
    M,_,bound=_theory(args)
    E,G=cartesian.free_cartesian(M,bound)
    rep=Report(subject=f'free cartesian multicategory {E.name}',bound=bound)
    rep.merge(cartesian.check_monad_laws(M,bound))
    if not args.skip_laws: rep.merge(cartesian.check_cartesian(E,G,bound))
    for n in range(bound+1):
        for X in M.families(n):
            for B in M.objects: rep.rows.append({'X':X.render(),'B':B,'arrows':len(E.homs(X,B))})
    return rep.finish()

def cmd_products(args) -> Report:
    M,native,bound=_theory(args)
    G=_structure(args,M,native,bound)
    if args.equivalence: rep=products.equivalence_report(M,G,bound,conversions=True)
    else:
        rep=Report(subject=f'products in {M.name} with {G.name}',bound=bound)
        rep.rows=products.equivalence_table(M,G,bound)
        rep.count('products',sum(1 for r in rep.rows if r['algebraic']))
    if args.all_witnesses: rep.merge(products.product_uniqueness_report(M,G,bound))
    return rep.finish()

def cmd_burnside(args) -> Report:
    M,_,bound=_theory(args)
    B=multicat.burnside(M,bound)
    rep=Report(subject=f'Burnside monoid of {M.name}',bound=bound)
    if isinstance(B,multicat.CommMonoidMulticat):
        rep.rows=[{'x':x,'y':y,'x+y':z} for x,y,z in B.mon.add]+[{'zero':B.mon.zero}]
        rep.count('classes',len(B.mon.carrier))
    else:
        rep.rows=[{'class':least,'members':len(members)} for least,members in B.arrow_classes]
        rep.count('classes',len(B.arrow_classes))
    return rep.finish()

def cmd_base_change(args) -> Report:
    M,_,bound=_theory(args)
    F=doubleprop.BaseMorphism(doubleprop.ORACLES[args.along.title()](),doubleprop.oracle_pb())
    N=doubleprop.base_change(M,F,bound)
    rep=Report(subject=f'base change of {M.name} along {F.src.kind}→Pb',bound=bound)
    rep.merge(multicat.validate(N,bound))
    if args.along=='tot': rep.merge(doubleprop.check_tot_adjunction(M,bound))
    for n in range(bound+1): rep.rows.append({'arity':n,'source':sum(len(M.homs(X,B)) for X in M.families(n) for B in M.objects),
        'result':sum(len(N.homs(X,B)) for X in N.families(n) for B in N.objects)})
    return rep.finish()

def cmd_check_model(args) -> Report:
    M,native,bound=_theory(args)
    G=_structure(args,M,native,bound)
    mdoc=corpus.resolve(args.model)
    if mdoc.kind!='model': raise StructuralError(f'{args.model} is a {mdoc.kind} document, not a model.')
    return cartesian.check_model(M,G,corpus.decode_model(mdoc),bound)

def cmd_examples(args) -> WorkbenchDoc:
    return corpus.example(args.name)


##
## DRIVER
##

def parser() -> argparse.ArgumentParser:
    common=argparse.ArgumentParser(add_help=False)
    common.add_argument('--format',choices=['json','text'],default='json')
    common.add_argument('--bound',type=int,default=None,help='arity bound (default: the document, then MULTICAT_BOUND, then 3)')
    common.add_argument('-v','--verbose',action='count',default=0)
    ap=argparse.ArgumentParser(prog='workbench',description='Law checking for finite symmetric and cartesian multicategories')
    sub=ap.add_subparsers(dest='command',required=True)
    p=sub.add_parser('validate',parents=[common],help='check the axioms of a document')
    p.add_argument('doc')
    p.set_defaults(run=cmd_validate)
    p=sub.add_parser('check-cartesian',parents=[common],help='check a cartesian structure in both formulations')
    p.add_argument('doc')
    p.add_argument('--gamma',default='native')
    p.set_defaults(run=cmd_check_cartesian)
    p=sub.add_parser('free-cartesian',parents=[common],help='build M^cart, check the monad laws and the free structure')
    p.add_argument('doc')
    p.add_argument('--skip-laws',action='store_true',help='only the monad laws and hom counts')
    p.set_defaults(run=cmd_free_cartesian)
    p=sub.add_parser('products',parents=[common],help='algebraic, universal and representable products')
    p.add_argument('doc')
    p.add_argument('--gamma',default='native')
    p.add_argument('--equivalence',action='store_true',help='check the three notions agree and run the conversions')
    p.add_argument('--all-witnesses',action='store_true',help='find every algebraic product and check they are pairwise canonically isomorphic')
    p.set_defaults(run=cmd_products)
    p=sub.add_parser('burnside',parents=[common],help='isomorphism classes of the loose part')
    p.add_argument('doc')
    p.set_defaults(run=cmd_burnside)
    p=sub.add_parser('base-change',parents=[common],help='pull a multicategory back to another base')
    p.add_argument('doc')
    p.add_argument('--along',choices=['tot','bij'],required=True)
    p.set_defaults(run=cmd_base_change)
    p=sub.add_parser('check-model',parents=[common],help='check a finite model of a cartesian multicategory')
    p.add_argument('doc')
    p.add_argument('model')
    p.add_argument('--gamma',default='native')
    p.set_defaults(run=cmd_check_model)
    p=sub.add_parser('examples',parents=[common],help='print a built-in document')
    p.add_argument('name')
    p.set_defaults(run=cmd_examples)
    return ap

def _error(e: Exception,out) -> None:
    out.write(json.dumps({'type':e.__class__.__name__,'message':str(e),'traceback':traceback.format_exc()},sort_keys=True,indent=2)+'\n')

def main(argv: Optional[List[str]]=None,out=None) -> int:
    out=out or sys.stdout
    args=parser().parse_args(argv)
    if args.verbose: GG.verbosity_set(args.verbose)
    try:
        if args.bound is not None and args.bound<0: raise StructuralError(f'Arity bound must be non-negative (not {args.bound}).')
        res=args.run(args)
    except BoundExceeded as e:
        log.warning(f'{args.command}: {e}')
        rep=Report(subject=args.command,bound=args.bound if args.bound is not None else GG.bound(),status='bound-exceeded',rows=[{'type':e.__class__.__name__,'message':str(e)}])
        out.write((rep.to_json() if args.format=='json' else rep.to_text())+'\n')
        return 3
    except (StructuralError,LawValidationError,pydantic.ValidationError) as e:
        log.error(f'{args.command}: {e}')
        _error(e,out)
        return 2
    if isinstance(res,WorkbenchDoc):
        out.write(res.dumps()+'\n')
        return 0
    out.write((res.to_json() if args.format=='json' else res.to_text())+'\n')
    return 0 if res.ok else 1


if __name__=='__main__':
    raise SystemExit(main())
