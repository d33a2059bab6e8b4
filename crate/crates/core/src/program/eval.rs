//! Interpreter for the list DSL.
//!
//! Evaluation is total: every failure (bad index, empty reduction, kind
//! mismatch, overflow) maps to `ProgramResponse::InvalidInput` rather than an
//! error, so agents can probe with arbitrary integer lists.

use super::ast::ProgramExpr;
use super::prims::Prim;
use super::ProgramResponse;

/// Intermediate value during evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Int(i64),
    List(Vec<i64>),
}

struct Invalid;

/// Evaluates a full program on an input list. Scalar results are wrapped into
/// a one-element list so that responses are always lists.
pub fn eval_program(expr: &ProgramExpr, input: &[i64]) -> ProgramResponse {
    let body = match expr {
        ProgramExpr::Lambda(body) => body,
        other => other,
    };
    match eval_expr(body, input) {
        Ok(Value::List(l)) => ProgramResponse::ValueList(l),
        Ok(Value::Int(i)) => ProgramResponse::ValueList(vec![i]),
        Err(_) => ProgramResponse::InvalidInput,
    }
}

/// Evaluates a body expression against the bound input list.
pub fn eval_expr(expr: &ProgramExpr, input: &[i64]) -> Result<Value, ()> {
    eval(expr, input).map_err(|_| ())
}

fn eval(expr: &ProgramExpr, input: &[i64]) -> Result<Value, Invalid> {
    match expr {
        ProgramExpr::Lambda(_) => Err(Invalid),
        ProgramExpr::Var => Ok(Value::List(input.to_vec())),
        ProgramExpr::IntLiteral(n) => Ok(Value::Int(*n)),
        ProgramExpr::PrimApply(prim, args) => apply(*prim, args, input),
    }
}

fn as_list(v: Value) -> Result<Vec<i64>, Invalid> {
    match v {
        Value::List(l) => Ok(l),
        Value::Int(_) => Err(Invalid),
    }
}

fn as_int(v: Value) -> Result<i64, Invalid> {
    match v {
        Value::Int(i) => Ok(i),
        Value::List(_) => Err(Invalid),
    }
}

fn apply(prim: Prim, args: &[ProgramExpr], input: &[i64]) -> Result<Value, Invalid> {
    if prim.has_param() {
        let k = as_int(eval(&args[0], input)?)?;
        let list = as_list(eval(&args[1], input)?)?;
        apply_param(prim, k, list)
    } else {
        let arg = eval(&args[0], input)?;
        apply_plain(prim, arg)
    }
}

fn index(list: &[i64], i: usize) -> Result<Value, Invalid> {
    list.get(i).copied().map(Value::Int).ok_or(Invalid)
}

fn apply_plain(prim: Prim, arg: Value) -> Result<Value, Invalid> {
    if prim == Prim::Singleton {
        return Ok(Value::List(vec![as_int(arg)?]));
    }
    let list = as_list(arg)?;
    match prim {
        Prim::First => index(&list, 0),
        Prim::Second => index(&list, 1),
        Prim::Third => index(&list, 2),
        Prim::Last => list.last().copied().map(Value::Int).ok_or(Invalid),
        Prim::Tail => {
            if list.is_empty() {
                Err(Invalid)
            } else {
                Ok(Value::List(list[1..].to_vec()))
            }
        }
        Prim::Droplast => {
            if list.is_empty() {
                Err(Invalid)
            } else {
                Ok(Value::List(list[..list.len() - 1].to_vec()))
            }
        }
        Prim::Reverse => Ok(Value::List(list.iter().rev().copied().collect())),
        Prim::Sort => {
            let mut l = list;
            l.sort_unstable();
            Ok(Value::List(l))
        }
        Prim::Unique => {
            let mut seen = Vec::new();
            for x in list {
                if !seen.contains(&x) {
                    seen.push(x);
                }
            }
            Ok(Value::List(seen))
        }
        Prim::Length => Ok(Value::Int(list.len() as i64)),
        Prim::Sum => {
            let mut acc = 0i64;
            for x in list {
                acc = acc.checked_add(x).ok_or(Invalid)?;
            }
            Ok(Value::Int(acc))
        }
        Prim::Max => list.iter().max().copied().map(Value::Int).ok_or(Invalid),
        Prim::Min => list.iter().min().copied().map(Value::Int).ok_or(Invalid),
        Prim::ConcatSelf => {
            let mut l = list.clone();
            l.extend_from_slice(&list);
            Ok(Value::List(l))
        }
        Prim::FilterEven => Ok(Value::List(
            list.into_iter().filter(|x| x.rem_euclid(2) == 0).collect(),
        )),
        Prim::FilterOdd => Ok(Value::List(
            list.into_iter().filter(|x| x.rem_euclid(2) != 0).collect(),
        )),
        _ => Err(Invalid),
    }
}

fn apply_param(prim: Prim, k: i64, list: Vec<i64>) -> Result<Value, Invalid> {
    match prim {
        // 1-indexed; out of range is a precondition violation.
        Prim::Nth => {
            if k < 1 {
                return Err(Invalid);
            }
            index(&list, (k - 1) as usize)
        }
        Prim::Take => {
            if k < 0 {
                return Err(Invalid);
            }
            let n = (k as usize).min(list.len());
            Ok(Value::List(list[..n].to_vec()))
        }
        Prim::Drop => {
            if k < 0 {
                return Err(Invalid);
            }
            let n = (k as usize).min(list.len());
            Ok(Value::List(list[n..].to_vec()))
        }
        Prim::Cons => {
            let mut l = vec![k];
            l.extend(list);
            Ok(Value::List(l))
        }
        Prim::Append => {
            let mut l = list;
            l.push(k);
            Ok(Value::List(l))
        }
        Prim::Count => Ok(Value::Int(list.iter().filter(|&&x| x == k).count() as i64)),
        Prim::MapAdd => list
            .into_iter()
            .map(|x| x.checked_add(k).ok_or(Invalid))
            .collect::<Result<Vec<_>, _>>()
            .map(Value::List),
        Prim::MapSub => list
            .into_iter()
            .map(|x| x.checked_sub(k).ok_or(Invalid))
            .collect::<Result<Vec<_>, _>>()
            .map(Value::List),
        Prim::MapMul => list
            .into_iter()
            .map(|x| x.checked_mul(k).ok_or(Invalid))
            .collect::<Result<Vec<_>, _>>()
            .map(Value::List),
        Prim::FilterGt => Ok(Value::List(list.into_iter().filter(|&x| x > k).collect())),
        Prim::FilterLt => Ok(Value::List(list.into_iter().filter(|&x| x < k).collect())),
        _ => Err(Invalid),
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse::parse_program;
    use super::*;

    fn run(dsl: &str, input: &[i64]) -> ProgramResponse {
        eval_program(&parse_program(dsl).unwrap(), input)
    }

    fn list(v: &[i64]) -> ProgramResponse {
        ProgramResponse::ValueList(v.to_vec())
    }

    #[test]
    fn primitive_semantics() {
        assert_eq!(run("(lambda (first $0))", &[7, 8]), list(&[7]));
        assert_eq!(run("(lambda (second $0))", &[7, 8]), list(&[8]));
        assert_eq!(run("(lambda (last $0))", &[7, 8, 9]), list(&[9]));
        assert_eq!(run("(lambda (tail $0))", &[7, 8, 9]), list(&[8, 9]));
        assert_eq!(run("(lambda (tail $0))", &[7]), list(&[]));
        assert_eq!(run("(lambda (droplast $0))", &[7, 8, 9]), list(&[7, 8]));
        assert_eq!(run("(lambda (reverse $0))", &[1, 2, 3]), list(&[3, 2, 1]));
        assert_eq!(run("(lambda (sort $0))", &[3, 1, 2]), list(&[1, 2, 3]));
        assert_eq!(
            run("(lambda (unique $0))", &[2, 1, 2, 3, 1]),
            list(&[2, 1, 3])
        );
        assert_eq!(run("(lambda (length $0))", &[5, 5, 5]), list(&[3]));
        assert_eq!(run("(lambda (sum $0))", &[1, 2, 3]), list(&[6]));
        assert_eq!(run("(lambda (max $0))", &[4, 9, 2]), list(&[9]));
        assert_eq!(run("(lambda (min $0))", &[4, 9, 2]), list(&[2]));
        assert_eq!(run("(lambda (concat-self $0))", &[1, 2]), list(&[1, 2, 1, 2]));
        assert_eq!(
            run("(lambda (filter-even $0))", &[1, 2, 3, 4]),
            list(&[2, 4])
        );
        assert_eq!(run("(lambda (filter-odd $0))", &[1, 2, 3, 4]), list(&[1, 3]));
        assert_eq!(run("(lambda (nth 4 $0))", &[9, 8, 7, 6, 5]), list(&[6]));
        assert_eq!(run("(lambda (take 2 $0))", &[9, 8, 7]), list(&[9, 8]));
        assert_eq!(run("(lambda (take 5 $0))", &[9, 8]), list(&[9, 8]));
        assert_eq!(run("(lambda (drop 2 $0))", &[9, 8, 7]), list(&[7]));
        assert_eq!(run("(lambda (cons 1 $0))", &[2, 3]), list(&[1, 2, 3]));
        assert_eq!(run("(lambda (append 9 $0))", &[2, 3]), list(&[2, 3, 9]));
        assert_eq!(run("(lambda (count 5 $0))", &[5, 1, 5]), list(&[2]));
        assert_eq!(run("(lambda (map-add 3 $0))", &[1, 2]), list(&[4, 5]));
        assert_eq!(run("(lambda (map-sub 1 $0))", &[1, 2]), list(&[0, 1]));
        assert_eq!(run("(lambda (map-mul 2 $0))", &[1, 2]), list(&[2, 4]));
        assert_eq!(
            run("(lambda (filter-gt 50 $0))", &[10, 60, 50, 90]),
            list(&[60, 90])
        );
        assert_eq!(
            run("(lambda (filter-lt 50 $0))", &[10, 60, 50, 90]),
            list(&[10])
        );
    }

    #[test]
    fn invalid_inputs() {
        // empty-list reductions
        for dsl in [
            "(lambda (first $0))",
            "(lambda (last $0))",
            "(lambda (tail $0))",
            "(lambda (droplast $0))",
            "(lambda (max $0))",
            "(lambda (min $0))",
        ] {
            assert_eq!(run(dsl, &[]), ProgramResponse::InvalidInput, "{dsl}");
        }
        // index out of range
        assert_eq!(run("(lambda (third $0))", &[1, 2]), ProgramResponse::InvalidInput);
        assert_eq!(run("(lambda (nth 4 $0))", &[1, 2]), ProgramResponse::InvalidInput);
        // kind-incompatible intermediate: `length` yields an int, `first` wants a list
        assert_eq!(
            run("(lambda (first (length $0)))", &[1, 2]),
            ProgramResponse::InvalidInput
        );
        // singleton of a list
        assert_eq!(
            run("(lambda (singleton (tail $0)))", &[1, 2]),
            ProgramResponse::InvalidInput
        );
        // overflow
        assert_eq!(
            run("(lambda (map-mul 3 $0))", &[i64::MAX / 2]),
            ProgramResponse::InvalidInput
        );
        // sum of empty list is fine
        assert_eq!(run("(lambda (sum $0))", &[]), list(&[0]));
    }

    #[test]
    fn scalar_results_become_singleton_lists() {
        assert_eq!(run("(lambda (length $0))", &[1, 2, 3]), list(&[3]));
        assert_eq!(run("(lambda 7)", &[1]), list(&[7]));
    }
}
