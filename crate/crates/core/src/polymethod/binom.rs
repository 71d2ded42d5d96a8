use crate::gf::Field;

/// Binomial coefficients reduced mod `p`, via Lucas' theorem over base-`p`
/// digits and a factorial table of size `p`.
#[derive(Debug, Clone)]
pub struct BinomialModP {
    p: u64,
    fact: Vec<u64>,
    inv_fact: Vec<u64>,
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl BinomialModP {
    pub fn new(p: u32) -> Self {
        let p = p as u64;
        let mut fact = vec![1u64; p as usize];
        for i in 1..p as usize {
            fact[i] = fact[i - 1] * i as u64 % p;
        }
        let inv_fact = fact.iter().map(|&f| pow_mod(f, p - 2, p)).collect();
        BinomialModP { p, fact, inv_fact }
    }

    pub fn for_field(field: &Field) -> Self {
        Self::new(field.p())
    }

    fn small(&self, n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        self.fact[n as usize] * self.inv_fact[k as usize] % self.p * self.inv_fact[(n - k) as usize]
            % self.p
    }

    /// `C(n, k) mod p`; zero when `k > n`.
    pub fn get(&self, mut n: u64, mut k: u64) -> u32 {
        if k > n {
            return 0;
        }
        let mut acc = 1;
        while k > 0 || n > 0 {
            acc = acc * self.small(n % self.p, k % self.p) % self.p;
            if acc == 0 {
                return 0;
            }
            n /= self.p;
            k /= self.p;
        }
        acc as u32
    }
}
