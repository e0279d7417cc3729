//! Canonical text rendering. The printer and parser are inverse up to
//! normalization: `parse(format(e)) == e` for every canonical expression.

use super::{Expr, Node, Number};

pub fn format_expr(e: &Expr) -> String {
    let mut out = String::new();
    write_expr(e, &mut out, Prec::Sum);
    out
}

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Sum,
    Prod,
    Atom,
}

fn write_number(n: &Number, out: &mut String) {
    match *n {
        Number::Rat(p, 1) => out.push_str(&p.to_string()),
        Number::Rat(p, q) => out.push_str(&format!("{p}/{q}")),
        Number::Real(v) => out.push_str(&format!("{v}")),
    }
}

/// True when the term renders with a leading minus sign.
fn leading_negative(e: &Expr) -> bool {
    match e.node() {
        Node::Num(n) => n.is_negative(),
        Node::Prod(items) => match items[0].node() {
            Node::Num(n) => n.is_negative(),
            _ => false,
        },
        _ => false,
    }
}

/// The same term with its leading numeric sign flipped.
fn negated(e: &Expr) -> Expr {
    Expr::neg(e.clone())
}

fn write_expr(e: &Expr, out: &mut String, ctx: Prec) {
    match e.node() {
        Node::Sum(items) => {
            let paren = ctx > Prec::Sum;
            if paren {
                out.push('(');
            }
            for (i, item) in items.iter().enumerate() {
                if i == 0 {
                    write_expr(item, out, Prec::Sum);
                } else if leading_negative(item) {
                    out.push_str(" - ");
                    write_expr(&negated(item), out, Prec::Prod);
                } else {
                    out.push_str(" + ");
                    write_expr(item, out, Prec::Prod);
                }
            }
            if paren {
                out.push(')');
            }
        }
        Node::Prod(items) => write_prod(items, out, ctx),
        Node::Num(n) => {
            if n.is_negative() && ctx >= Prec::Prod {
                out.push('(');
                write_number(n, out);
                out.push(')');
            } else {
                write_number(n, out);
            }
        }
        Node::Var(v) => out.push_str(&v.to_string()),
        Node::Pow(base, k) => {
            if *k < 0 {
                // bare reciprocal: 1/base^|k|
                out.push_str("1/");
                write_pow_positive(base, -k, out);
            } else {
                write_pow_positive(base, *k, out);
            }
        }
        Node::Sqrt(inner) => write_call("sqrt", inner, out),
        Node::Exp(inner) => write_call("exp", inner, out),
        Node::Sin(inner) => write_call("sin", inner, out),
        Node::Cos(inner) => write_call("cos", inner, out),
        Node::Step(k, inner) => {
            let name = if *k == 0 { "step".to_string() } else { format!("step_{k}") };
            out.push_str(&name);
            out.push('(');
            write_expr(inner, out, Prec::Sum);
            out.push(')');
        }
    }
}

fn write_call(name: &str, arg: &Expr, out: &mut String) {
    out.push_str(name);
    out.push('(');
    write_expr(arg, out, Prec::Sum);
    out.push(')');
}

fn write_pow_positive(base: &Expr, k: i32, out: &mut String) {
    let atomic = matches!(
        base.node(),
        Node::Var(_) | Node::Sqrt(_) | Node::Exp(_) | Node::Sin(_) | Node::Cos(_) | Node::Step(_, _)
    );
    if k == 1 {
        if atomic {
            write_expr(base, out, Prec::Atom);
        } else {
            out.push('(');
            write_expr(base, out, Prec::Sum);
            out.push(')');
        }
        return;
    }
    if atomic {
        write_expr(base, out, Prec::Atom);
    } else {
        out.push('(');
        write_expr(base, out, Prec::Sum);
        out.push(')');
    }
    out.push('^');
    out.push_str(&k.to_string());
}

fn write_prod(items: &[Expr], out: &mut String, ctx: Prec) {
    // split into numerator and denominator factors
    let mut numer: Vec<Expr> = Vec::new();
    let mut denom: Vec<(Expr, i32)> = Vec::new();
    let mut negative = false;
    for item in items {
        match item.node() {
            Node::Num(n) => {
                let mut n = *n;
                if n.is_negative() {
                    negative = !negative;
                    n = match n {
                        Number::Rat(p, q) => Number::Rat(-p, q),
                        Number::Real(v) => Number::Real(-v),
                    };
                }
                if !n.is_one() {
                    numer.push(Expr::num(n));
                }
            }
            Node::Pow(base, k) if *k < 0 => denom.push((base.clone(), -k)),
            _ => numer.push(item.clone()),
        }
    }
    let paren = ctx > Prec::Prod || (negative && ctx > Prec::Sum);
    if paren {
        out.push('(');
    }
    if negative {
        out.push('-');
    }
    if numer.is_empty() {
        out.push('1');
    } else {
        for (i, f) in numer.iter().enumerate() {
            if i > 0 {
                out.push('*');
            }
            write_factor(f, out);
        }
    }
    if !denom.is_empty() {
        out.push('/');
        if denom.len() == 1 {
            let (base, k) = &denom[0];
            write_pow_positive(base, *k, out);
        } else {
            out.push('(');
            for (i, (base, k)) in denom.iter().enumerate() {
                if i > 0 {
                    out.push('*');
                }
                write_pow_positive(base, *k, out);
            }
            out.push(')');
        }
    }
    if paren {
        out.push(')');
    }
}

fn write_factor(f: &Expr, out: &mut String) {
    match f.node() {
        Node::Sum(_) | Node::Prod(_) => {
            out.push('(');
            write_expr(f, out, Prec::Sum);
            out.push(')');
        }
        Node::Num(n) if n.is_negative() => {
            out.push('(');
            write_number(n, out);
            out.push(')');
        }
        _ => write_expr(f, out, Prec::Prod),
    }
}
