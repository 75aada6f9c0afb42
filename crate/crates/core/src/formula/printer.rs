use super::Formula;

const UNARY: u8 = 3;

fn write(f: &Formula, ctx: u8, out: &mut String) {
    match f {
        Formula::SetLit(labels) => {
            out.push('{');
            out.push_str(&labels.join(", "));
            out.push('}');
        }
        Formula::Omega => out.push_str("omega"),
        Formula::Empty => out.push_str("empty"),
        Formula::Var(v) => out.push_str(v),
        Formula::Apply(op, child) => {
            out.push_str(op.keyword());
            out.push('(');
            write(child, 0, out);
            out.push(')');
        }
        Formula::Complement(child) => {
            out.push('~');
            write(child, UNARY, out);
        }
        Formula::Binary(op, l, r) => {
            let p = op.precedence();
            let parens = p < ctx;
            if parens {
                out.push('(');
            }
            write(l, p, out);
            out.push(' ');
            out.push_str(op.symbol());
            out.push(' ');
            write(r, p + 1, out);
            if parens {
                out.push(')');
            }
        }
        Formula::Predicate(rel, l, r) => {
            write(l, 0, out);
            out.push(' ');
            out.push_str(rel.symbol());
            out.push(' ');
            write(r, 0, out);
        }
    }
}

/// Canonical text: minimal parentheses, single spaces around binary
/// operators and relations.
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    write(f, 0, &mut out);
    out
}
