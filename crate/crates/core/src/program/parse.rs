//! S-expression parser and printer for the list DSL.

use super::ast::ProgramExpr;
use super::prims::Prim;
use super::ProgramParseError;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close,
    Atom(String),
}

fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut atom = String::new();
    for c in text.chars() {
        match c {
            '(' | ')' => {
                if !atom.is_empty() {
                    tokens.push(Token::Atom(std::mem::take(&mut atom)));
                }
                tokens.push(if c == '(' { Token::Open } else { Token::Close });
            }
            c if c.is_whitespace() => {
                if !atom.is_empty() {
                    tokens.push(Token::Atom(std::mem::take(&mut atom)));
                }
            }
            c => atom.push(c),
        }
    }
    if !atom.is_empty() {
        tokens.push(Token::Atom(atom));
    }
    tokens
}

/// Parses DSL text such as `(lambda (singleton (third $0)))` into an
/// expression tree. Whitespace-insensitive.
pub fn parse_program(text: &str) -> Result<ProgramExpr, ProgramParseError> {
    let tokens = tokenize(text);
    let mut pos = 0usize;
    let expr = parse_expr(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(ProgramParseError::Syntax(
            "trailing tokens after program".into(),
        ));
    }
    match &expr {
        ProgramExpr::Lambda(_) => Ok(expr),
        _ => Err(ProgramParseError::Syntax(
            "program must be a single (lambda ...) form".into(),
        )),
    }
}

fn parse_expr(tokens: &[Token], pos: &mut usize) -> Result<ProgramExpr, ProgramParseError> {
    match tokens.get(*pos) {
        None => Err(ProgramParseError::Syntax("unexpected end of input".into())),
        Some(Token::Close) => Err(ProgramParseError::Syntax("unexpected `)`".into())),
        Some(Token::Atom(a)) => {
            *pos += 1;
            parse_atom(a)
        }
        Some(Token::Open) => {
            *pos += 1;
            let head = match tokens.get(*pos) {
                Some(Token::Atom(a)) => a.clone(),
                _ => {
                    return Err(ProgramParseError::Syntax(
                        "expected an operator after `(`".into(),
                    ))
                }
            };
            *pos += 1;
            let mut args = Vec::new();
            loop {
                match tokens.get(*pos) {
                    Some(Token::Close) => {
                        *pos += 1;
                        break;
                    }
                    None => {
                        return Err(ProgramParseError::Syntax("unbalanced parentheses".into()))
                    }
                    _ => args.push(parse_expr(tokens, pos)?),
                }
            }
            if head == "lambda" {
                if args.len() != 1 {
                    return Err(ProgramParseError::Syntax(
                        "lambda takes exactly one body expression".into(),
                    ));
                }
                return Ok(ProgramExpr::Lambda(Box::new(args.remove(0))));
            }
            let prim = Prim::from_name(&head)
                .ok_or_else(|| ProgramParseError::UnknownPrimitive(head.clone()))?;
            if args.len() != prim.arity() {
                return Err(ProgramParseError::Arity(
                    head.clone(),
                    prim.arity(),
                    args.len(),
                ));
            }
            if args.iter().any(|a| matches!(a, ProgramExpr::Lambda(_))) {
                return Err(ProgramParseError::Syntax(
                    "nested lambdas are not allowed".into(),
                ));
            }
            Ok(ProgramExpr::PrimApply(prim, args))
        }
    }
}

fn parse_atom(atom: &str) -> Result<ProgramExpr, ProgramParseError> {
    if atom == "$0" {
        return Ok(ProgramExpr::Var);
    }
    if atom.starts_with('$') {
        return Err(ProgramParseError::Syntax(format!(
            "unknown variable `{atom}`; only `$0` is bound"
        )));
    }
    if let Ok(n) = atom.parse::<i64>() {
        return Ok(ProgramExpr::IntLiteral(n));
    }
    Err(ProgramParseError::Syntax(format!(
        "bare atom `{atom}` is not a variable or integer"
    )))
}

/// Canonical printer; `parse_program(render_program(e))` reproduces `e`.
pub fn render_program(expr: &ProgramExpr) -> String {
    let mut out = String::new();
    write_expr(expr, &mut out);
    out
}

fn write_expr(expr: &ProgramExpr, out: &mut String) {
    match expr {
        ProgramExpr::Lambda(body) => {
            out.push_str("(lambda ");
            write_expr(body, out);
            out.push(')');
        }
        ProgramExpr::Var => out.push_str("$0"),
        ProgramExpr::IntLiteral(n) => out.push_str(&n.to_string()),
        ProgramExpr::PrimApply(prim, args) => {
            out.push('(');
            out.push_str(prim.name());
            for a in args {
                out.push(' ');
                write_expr(a, out);
            }
            out.push(')');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_reference_program() {
        let expr = parse_program("(lambda (singleton (third $0)))").unwrap();
        assert_eq!(
            expr,
            ProgramExpr::Lambda(Box::new(ProgramExpr::PrimApply(
                Prim::Singleton,
                vec![ProgramExpr::PrimApply(Prim::Third, vec![ProgramExpr::Var])],
            )))
        );
        assert_eq!(expr.op_count(), 2);
    }

    #[test]
    fn whitespace_insensitive() {
        let a = parse_program("(lambda(singleton(third $0)))").unwrap();
        let b = parse_program("  ( lambda ( singleton ( third   $0 ) ) ) ").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parameterised_primitives() {
        let expr = parse_program("(lambda (take 2 (reverse $0)))").unwrap();
        assert_eq!(expr.op_count(), 2);
        assert_eq!(render_program(&expr), "(lambda (take 2 (reverse $0)))");
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(
            parse_program("(lambda (third $0)").unwrap_err(),
            ProgramParseError::Syntax(_)
        ));
        assert!(matches!(
            parse_program("(lambda (third $0))) extra").unwrap_err(),
            ProgramParseError::Syntax(_)
        ));
        assert!(matches!(
            parse_program("(third $0)").unwrap_err(),
            ProgramParseError::Syntax(_)
        ));
        assert!(matches!(
            parse_program("(lambda (third $1))").unwrap_err(),
            ProgramParseError::Syntax(_)
        ));
    }

    #[test]
    fn arity_errors() {
        assert!(matches!(
            parse_program("(lambda (take $0))").unwrap_err(),
            ProgramParseError::Arity(_, 2, 1)
        ));
        assert!(matches!(
            parse_program("(lambda (reverse 1 $0))").unwrap_err(),
            ProgramParseError::Arity(_, 1, 2)
        ));
    }

    #[test]
    fn round_trip_all_primitives() {
        let texts = [
            "(lambda $0)",
            "(lambda (first $0))",
            "(lambda (nth 4 (sort $0)))",
            "(lambda (cons 5 (map-add 3 (filter-gt 50 $0))))",
        ];
        for t in texts {
            let e = parse_program(t).unwrap();
            assert_eq!(parse_program(&render_program(&e)).unwrap(), e);
        }
    }
}
