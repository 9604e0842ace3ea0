/// The Luby sequence, 1-indexed: 1 1 2 1 1 2 4 1 1 2 1 1 2 4 8 ...
pub fn luby(index: u64) -> u64 {
    assert!(index >= 1, "the Luby sequence starts at index 1");
    let mut i = index;
    loop {
        // smallest k with 2^k - 1 >= i
        let mut k = 1u32;
        while (1u64 << k) - 1 < i {
            k += 1;
        }
        if (1u64 << k) - 1 == i {
            return 1u64 << (k - 1);
        }
        i -= (1u64 << (k - 1)) - 1;
    }
}

/// Conflicts allowed before restart number `restart_count` (1-based).
pub fn restart_schedule(restart_count: u64, base: u64) -> u64 {
    luby(restart_count) * base
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefix() {
        let seq: Vec<u64> = (1..=15).map(luby).collect();
        assert_eq!(seq, vec![1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]);
    }

    #[test]
    fn scaled() {
        assert_eq!(restart_schedule(3, 100), 200);
        assert_eq!(restart_schedule(15, 100), 800);
        assert_eq!(restart_schedule(1, 7), 7);
    }

    #[test]
    fn self_similar() {
        // the first 2^k - 1 terms repeat, followed by 2^k
        for k in 1..10u32 {
            let m = (1u64 << k) - 1;
            for i in 1..=m {
                assert_eq!(luby(m + i), luby(i));
            }
            assert_eq!(luby(2 * m + 1), 1 << k);
        }
    }
}
