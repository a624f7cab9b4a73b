//! Raw identifiers to bags of subwords.

use alloc::string::ToString;
use alloc::vec;

use crate::ir::{Function, Name, TypeRef, VisitMut};
use crate::segment::segment;

struct Fuzzer;

fn bag(n: &mut Name) {
    if let Name::Raw(s) = n {
        let mut words = segment(s);
        if words.is_empty() {
            // Names made only of separators, such as `_`.
            words = vec!["unnamed".to_string()];
        }
        *n = Name::Bag(words);
    }
}

impl VisitMut for Fuzzer {
    fn visit_name(&mut self, n: &mut Name) {
        bag(n);
    }

    fn visit_type(&mut self, t: &mut TypeRef) {
        match t {
            TypeRef::User(n) => bag(n),
            TypeRef::Array(inner) => self.visit_type(inner),
            TypeRef::Prim(_) => {}
        }
    }
}

/// Replace every remaining raw name with the bag of its segmentation.
pub fn fuzz_names(mut f: Function) -> Function {
    Fuzzer.visit_function(&mut f);
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{Expr, Stmt};
    use alloc::string::String;
    use alloc::vec::Vec;

    fn words(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn bags_every_name() {
        let f = Function {
            name: Name::raw("getMaxValue"),
            ret: None,
            params: Vec::new(),
            body: vec![Stmt::Return(Some(Expr::name("two_sum2")))],
        };
        let f = fuzz_names(f);
        assert_eq!(f.name, Name::Bag(words(&["get", "max", "value"])));
        assert_eq!(f.body[0], Stmt::Return(Some(Expr::Name(Name::Bag(words(&["two", "sum", "2"]))))));
    }

    #[test]
    fn separator_only_name() {
        let f = fuzz_names(Function {
            name: Name::raw("_"),
            ret: None,
            params: Vec::new(),
            body: Vec::new(),
        });
        assert_eq!(f.name, Name::Bag(words(&["unnamed"])));
    }
}
