use crate::formula::Formula;
use crate::term::Term;

pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(t, 0, &mut out);
    out
}

// Levels: join 0, meet 1, atom 2. Both operators associate to the left.
fn write_term(t: &Term, ctx: u8, out: &mut String) {
    let (level, lhs, op, rhs) = match t {
        Term::Atom(x) => {
            out.push_str(x.name());
            return;
        }
        Term::Join(l, r) => (0, l, '+', r),
        Term::Meet(l, r) => (1, l, '*', r),
    };
    let wrap = level < ctx;
    if wrap {
        out.push('(');
    }
    write_term(lhs, level, out);
    out.push(op);
    write_term(rhs, level + 1, out);
    if wrap {
        out.push(')');
    }
}

/// The shape a formula is printed in. Desugared conjunctions, implications
/// and equivalences are recognised so that the printed text reads like the
/// input that produced them; re-parsing yields the same tree either way.
enum View<'a> {
    Iff(&'a Formula, &'a Formula),
    Imp(&'a Formula, &'a Formula),
    Or(&'a Formula, &'a Formula),
    And(&'a Formula, &'a Formula),
    Unary,
}

const IFF: u8 = 0;
const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

fn as_and(f: &Formula) -> Option<(&Formula, &Formula)> {
    if let Formula::Not(inner) = f {
        if let Formula::Or(l, r) = inner.as_ref() {
            if let (Formula::Not(x), Formula::Not(y)) = (l.as_ref(), r.as_ref()) {
                return Some((x, y));
            }
        }
    }
    None
}

fn as_imp(f: &Formula) -> Option<(&Formula, &Formula)> {
    if let Formula::Or(l, r) = f {
        if let Formula::Not(x) = l.as_ref() {
            return Some((x, r));
        }
    }
    None
}

fn view(f: &Formula) -> View<'_> {
    if let Some((l, r)) = as_and(f) {
        if let (Some((x, y)), Some((y2, x2))) = (as_imp(l), as_imp(r)) {
            if x == x2 && y == y2 {
                return View::Iff(x, y);
            }
        }
        return View::And(l, r);
    }
    if let Some((x, y)) = as_imp(f) {
        return View::Imp(x, y);
    }
    match f {
        Formula::Or(l, r) => View::Or(l, r),
        _ => View::Unary,
    }
}

/// Prints with the fewest parentheses the parser's precedence allows.
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, IFF, &mut out);
    out
}

fn write_formula(f: &Formula, ctx: u8, out: &mut String) {
    let (level, lhs, op, rhs, lctx, rctx) = match view(f) {
        View::Iff(l, r) => (IFF, l, " <-> ", r, IFF, IMP),
        View::Imp(l, r) => (IMP, l, " -> ", r, OR, IMP),
        View::Or(l, r) => (OR, l, " | ", r, OR, AND),
        View::And(l, r) => (AND, l, " & ", r, AND, UNARY),
        View::Unary => {
            write_unary(f, out);
            return;
        }
    };
    let wrap = level < ctx;
    if wrap {
        out.push('(');
    }
    write_formula(lhs, lctx, out);
    out.push_str(op);
    write_formula(rhs, rctx, out);
    if wrap {
        out.push(')');
    }
}

fn write_unary(f: &Formula, out: &mut String) {
    let body = match f {
        Formula::Prop(p) => {
            out.push_str(p);
            return;
        }
        Formula::Not(body) => {
            out.push('~');
            body
        }
        Formula::Diamond(t, body) => {
            out.push('<');
            out.push_str(&print_term(t));
            out.push('>');
            body
        }
        Formula::Box(t, body) => {
            out.push('[');
            out.push_str(&print_term(t));
            out.push(']');
            body
        }
        Formula::Bang { map, body } => {
            out.push_str("[!");
            out.push_str(map);
            out.push(']');
            body
        }
        Formula::Event { model, event, body } => {
            out.push('[');
            out.push_str(model);
            out.push('.');
            out.push_str(event);
            out.push(']');
            body
        }
        Formula::Or(..) => unreachable!("disjunctions are binary views"),
    };
    write_formula(body, UNARY, out);
}
