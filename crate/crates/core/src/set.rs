//! Small helpers for element sets kept as sorted, duplicate-free `Vec<usize>`.

pub type IdSet = Vec<usize>;

pub fn normalized(mut ids: Vec<usize>) -> IdSet {
    ids.sort_unstable();
    ids.dedup();
    ids
}

pub fn with(set: &[usize], e: usize) -> IdSet {
    let mut out = set.to_vec();
    if let Err(pos) = out.binary_search(&e) {
        out.insert(pos, e);
    }
    out
}

pub fn without(set: &[usize], e: usize) -> IdSet {
    set.iter().copied().filter(|&x| x != e).collect()
}

pub fn union(a: &[usize], b: &[usize]) -> IdSet {
    let mut out = Vec::with_capacity(a.len() + b.len());
    out.extend_from_slice(a);
    out.extend_from_slice(b);
    normalized(out)
}

pub fn difference(a: &[usize], b: &[usize]) -> IdSet {
    a.iter().copied().filter(|x| b.binary_search(x).is_err()).collect()
}

pub fn contains(set: &[usize], e: usize) -> bool {
    set.binary_search(&e).is_ok()
}

pub fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| contains(b, *x))
}

pub fn from_mask(mask: u64, universe: &[usize]) -> IdSet {
    universe
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        assert_eq!(with(&[1, 3], 2), vec![1, 2, 3]);
        assert_eq!(with(&[1, 3], 3), vec![1, 3]);
        assert_eq!(without(&[1, 2, 3], 2), vec![1, 3]);
        assert_eq!(union(&[3, 1], &[2, 1]), vec![1, 2, 3]);
        assert_eq!(difference(&[1, 2, 3], &[2]), vec![1, 3]);
        assert!(is_subset(&[1, 3], &[1, 2, 3]));
        assert_eq!(from_mask(0b101, &[4, 5, 6]), vec![4, 6]);
    }
}
