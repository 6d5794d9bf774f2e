use num_rational::Ratio;

/// Largest even index stored in the table.
pub const MAX_INDEX: usize = 30;

/// Bernoulli numbers `B_0 ..= B_30` (convention `B_1 = -1/2`) as exact rationals.
#[derive(Debug, Clone, Copy)]
pub struct BernoulliTable {
    numer: [i128; MAX_INDEX + 1],
    denom: [i128; MAX_INDEX + 1],
}

/// The table, evaluated at compile time.
pub static BERNOULLI: BernoulliTable = BernoulliTable::compute();

const fn gcd(mut a: i128, mut b: i128) -> i128 {
    if a < 0 {
        a = -a;
    }
    if b < 0 {
        b = -b;
    }
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

const fn binomial(n: usize, k: usize) -> i128 {
    let mut acc: i128 = 1;
    let mut i = 0;
    while i < k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
        i += 1;
    }
    acc
}

impl BernoulliTable {
    /// `B_m = -(1/(m+1)) Σ_{k<m} C(m+1, k) B_k`, in exact arithmetic.
    pub const fn compute() -> Self {
        let mut numer = [0i128; MAX_INDEX + 1];
        let mut denom = [1i128; MAX_INDEX + 1];
        numer[0] = 1;
        let mut m = 1;
        while m <= MAX_INDEX {
            let mut sn: i128 = 0;
            let mut sd: i128 = 1;
            let mut k = 0;
            while k < m {
                if numer[k] != 0 {
                    let c = binomial(m + 1, k);
                    let tn = c * numer[k];
                    let td = denom[k];
                    let g = gcd(sd, td);
                    let l = sd / g * td;
                    sn = sn * (l / sd) + tn * (l / td);
                    sd = l;
                    let g2 = gcd(sn, sd);
                    if g2 > 1 {
                        sn /= g2;
                        sd /= g2;
                    }
                }
                k += 1;
            }
            let mut n = -sn;
            let mut d = sd * (m as i128 + 1);
            let g = gcd(n, d);
            if g > 1 {
                n /= g;
                d /= g;
            }
            numer[m] = n;
            denom[m] = d;
            m += 1;
        }
        BernoulliTable { numer, denom }
    }

    pub fn get(&self, index: usize) -> Ratio<i128> {
        Ratio::new_raw(self.numer[index], self.denom[index])
    }

    pub fn as_f64(&self, index: usize) -> f64 {
        self.numer[index] as f64 / self.denom[index] as f64
    }
}
