use std::cmp::Ordering;

/// Exponent vector of a monomial.
pub type Exponent = Vec<u32>;

/// Monomial orders used for local-ring computations.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    /// Negative degree reverse lexicographic (`ds`): lower total degree
    /// ranks higher, ties broken by reverse lex.
    #[default]
    LocalDegRevLex,
    /// Ranks any monomial with positive degree in `block` above all
    /// monomials free of those variables; within equal block degree falls
    /// back to local degrevlex.
    Elimination { block: Vec<usize> },
}

impl MonomialOrder {
    /// `Greater` means `a` ranks higher (leads) than `b`.
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::LocalDegRevLex => local_degrevlex(a, b),
            MonomialOrder::Elimination { block } => {
                let da: u32 = block.iter().map(|&i| a[i]).sum();
                let db: u32 = block.iter().map(|&i| b[i]).sum();
                da.cmp(&db).then_with(|| local_degrevlex(a, b))
            }
        }
    }

    /// Every non-constant monomial ranks below `1`.
    pub fn is_local(&self) -> bool {
        match self {
            MonomialOrder::LocalDegRevLex => true,
            MonomialOrder::Elimination { block } => block.is_empty(),
        }
    }
}

pub(crate) fn degree(a: &[u32]) -> u32 {
    a.iter().sum()
}

fn local_degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    degree(b).cmp(&degree(a)).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn lcm(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub(crate) fn sub(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn add(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}
