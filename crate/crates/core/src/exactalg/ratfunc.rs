use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Zero;

use super::{poly_gcd, AlgError, Poly, Rational};

/// Degree bound under which numerator and denominator are fully reduced by
/// their gcd. Above it only the scalar normalization is applied.
const GCD_DEGREE_LIMIT: u32 = 8;

/// Quotient of two polynomials.
///
/// The denominator is nonzero, has coprime integer coefficients and a positive
/// leading coefficient. A polynomial is represented with denominator one.
#[derive(Debug, Clone)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self, AlgError> {
        if num.nvars() != den.nvars() {
            return Err(AlgError::DimensionMismatch(num.nvars(), den.nvars()));
        }
        if den.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        RatFunc {
            num: p,
            den: Poly::one(n),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Poly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Poly::one(nvars))
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_poly(Poly::constant(nvars, c))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return Self::zero(n);
        }
        if den.is_constant() {
            let c = den.constant_term();
            return Self::from_poly(num.scale(&c.recip()));
        }
        let (mut num, mut den) = (num, den);
        if num.degree().unwrap() <= GCD_DEGREE_LIMIT && den.degree().unwrap() <= GCD_DEGREE_LIMIT {
            let g = poly_gcd(&num, &den);
            if !g.is_constant() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        if den.is_constant() {
            let c = den.constant_term();
            return Self::from_poly(num.scale(&c.recip()));
        }
        let s = den.normalizing_scale();
        RatFunc {
            num: num.scale(&s),
            den: den.scale(&s),
        }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_poly().then_some(&self.num)
    }

    pub fn into_poly(self) -> Option<Poly> {
        if self.is_poly() {
            Some(self.num)
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.is_poly() && self.num.is_constant()
    }

    fn check_dim(&self, other: &RatFunc) -> Result<(), AlgError> {
        if self.nvars() == other.nvars() {
            Ok(())
        } else {
            Err(AlgError::DimensionMismatch(self.nvars(), other.nvars()))
        }
    }

    pub fn checked_add(&self, other: &RatFunc) -> Result<RatFunc, AlgError> {
        self.check_dim(other)?;
        if self.is_poly() && other.is_poly() {
            return Ok(Self::from_poly(&self.num + &other.num));
        }
        if self.den == other.den {
            return Ok(Self::normalized(&self.num + &other.num, self.den.clone()));
        }
        Ok(Self::normalized(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        ))
    }

    pub fn checked_sub(&self, other: &RatFunc) -> Result<RatFunc, AlgError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &RatFunc) -> Result<RatFunc, AlgError> {
        self.check_dim(other)?;
        if self.is_poly() && other.is_poly() {
            return Ok(Self::from_poly(&self.num * &other.num));
        }
        Ok(Self::normalized(
            &self.num * &other.num,
            &self.den * &other.den,
        ))
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc, AlgError> {
        self.check_dim(other)?;
        if other.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        Ok(Self::normalized(
            &self.num * &other.den,
            &self.den * &other.num,
        ))
    }

    pub fn recip(&self) -> Result<RatFunc, AlgError> {
        RatFunc::one(self.nvars()).checked_div(self)
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFunc {
        if self.is_poly() {
            return Self::from_poly(&self.num * p);
        }
        Self::normalized(&self.num * p, self.den.clone())
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Partial derivative by the quotient rule.
    pub fn diff(&self, var: usize) -> RatFunc {
        if self.is_poly() {
            return Self::from_poly(self.num.diff(var));
        }
        let top = &(&self.num.diff(var) * &self.den) - &(&self.num * &self.den.diff(var));
        Self::normalized(top, self.den.pow(2))
    }

    /// Value at a point, or `None` where the denominator vanishes.
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(point) / d)
        }
    }

    /// Sets the listed variables to zero; fails if the denominator vanishes
    /// identically there.
    pub fn set_zero(&self, vars: &[usize]) -> Result<RatFunc, AlgError> {
        let den = self.den.set_zero(vars);
        if den.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        Ok(Self::normalized(self.num.set_zero(vars), den))
    }

    pub fn partial_eval(&self, assignments: &[(usize, Rational)]) -> Result<RatFunc, AlgError> {
        let den = self.den.partial_eval(assignments);
        if den.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        Ok(Self::normalized(self.num.partial_eval(assignments), den))
    }

    /// Simultaneous substitution of rational functions for the variables.
    pub fn subst(&self, images: &[RatFunc]) -> Result<RatFunc, AlgError> {
        let n = self.num.subst(images);
        if self.is_poly() {
            return Ok(n);
        }
        let d = self.den.subst(images);
        n.checked_div(&d)
    }

    pub fn embed(&self, nvars: usize, mapping: &[usize]) -> RatFunc {
        RatFunc {
            num: self.num.embed(nvars, mapping),
            den: self.den.embed(nvars, mapping),
        }
    }

    pub fn project(&self, keep: &[usize]) -> RatFunc {
        RatFunc {
            num: self.num.project(keep),
            den: self.den.project(keep),
        }
    }
}

impl Poly {
    /// Simultaneous substitution `x_i -> images[i]`; the result has denominator
    /// one whenever every image is a polynomial.
    pub fn subst(&self, images: &[RatFunc]) -> RatFunc {
        assert_eq!(
            images.len(),
            self.nvars(),
            "one image per variable is required"
        );
        if images.iter().all(RatFunc::is_poly) {
            let polys: Vec<Poly> = images.iter().map(|r| r.numer().clone()).collect();
            if polys.is_empty() {
                return RatFunc::from_poly(self.clone());
            }
            return RatFunc::from_poly(self.subst_poly(&polys));
        }
        let target = images[0].nvars();
        let mut cache: Vec<Vec<RatFunc>> =
            images.iter().map(|_| vec![RatFunc::one(target)]).collect();
        let mut out = RatFunc::zero(target);
        for (m, c) in self.terms() {
            let mut t = RatFunc::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = cache[i].last().unwrap() * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][e as usize];
            }
            out = &out + &t;
        }
        out
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.nvars() != other.nvars() {
            return false;
        }
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFunc {}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                self.$checked(rhs)
                    .expect("rational function operands must share a chart")
            }
        }
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}
