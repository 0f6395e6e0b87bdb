//! Exact piecewise-affine graph of the circle action.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::action::CanonicalAction;
use crate::element::{GroupElement, TypeTag};
use crate::error::{Error, Result};
use crate::point::RationalPoint;
use crate::transducer::Transducer;

/// `[x0,x1] → [y0,y1]` with slope `2^slope_log2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub x0: BigRational,
    pub x1: BigRational,
    pub y0: BigRational,
    pub y1: BigRational,
    pub slope_log2: i64,
    /// Cone `u` of the domain and cone `v` of the image.
    pub from: Vec<u8>,
    pub to: Vec<u8>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PiecewiseGraph {
    pub pieces: Vec<Piece>,
    /// Intervals where the depth budget ran out.
    pub singular: Vec<(BigRational, BigRational)>,
}

fn cone_interval(u: &[u8]) -> (BigRational, BigRational) {
    let num = u.iter().fold(BigInt::zero(), |acc, &b| acc * 2 + b);
    let den = num_traits::pow(BigInt::from(2), u.len());
    let x0 = BigRational::new(num, den.clone());
    let x1 = &x0 + BigRational::new(BigInt::one(), den);
    (x0, x1)
}

pub fn render(g: &GroupElement, depth: usize) -> Result<PiecewiseGraph> {
    if g.tag() == TypeTag::V {
        return Err(Error::TypeTag { expected: "F or T".into(), found: "V".into() });
    }
    let depth = depth.max(1);
    let action = CanonicalAction::new(&g.reduce())?;
    let a0 = Transducer::prefix(&[0]);
    let a1 = Transducer::prefix(&[1]);
    let mut graph = PiecewiseGraph::default();
    let mut stack: Vec<(Vec<u8>, Transducer)> = action.pieces().iter().rev().cloned().collect();
    while let Some((u, w)) = stack.pop() {
        if let Some(v) = w.as_prefix_map() {
            let (x0, x1) = cone_interval(&u);
            let (y0, y1) = cone_interval(&v);
            let slope_log2 = u.len() as i64 - v.len() as i64;
            graph.pieces.push(Piece { x0, x1, y0, y1, slope_log2, from: u, to: v });
        } else if u.len() >= depth {
            graph.singular.push(cone_interval(&u));
        } else {
            let mut u1 = u.clone();
            u1.push(1);
            let mut u0 = u;
            u0.push(0);
            stack.push((u1, Transducer::compose(&a1, &w)));
            stack.push((u0, Transducer::compose(&a0, &w)));
        }
    }
    Ok(graph)
}

/// Check a piece against direct evaluation at both ends and the midpoint.
pub fn verify_piece(g: &GroupElement, p: &Piece) -> Result<bool> {
    let one = BigRational::one();
    let wrap = |q: BigRational| if q == one { BigRational::zero() } else { q };
    let mut ok = true;
    let mut mid = p.from.clone();
    mid.push(1);
    let probes = [
        (RationalPoint::new(p.from.clone(), vec![0])?, p.y0.clone()),
        (RationalPoint::new(p.from.clone(), vec![1])?, wrap(p.y1.clone())),
        (RationalPoint::new(mid, vec![0])?, (&p.y0 + &p.y1) / BigRational::from_integer(2.into())),
    ];
    for (x, expect) in probes {
        ok &= g.act(&x)?.sigma() == expect;
    }
    let width_x = &p.x1 - &p.x0;
    let width_y = &p.y1 - &p.y0;
    let slope = if p.slope_log2 >= 0 {
        BigRational::from_integer(num_traits::pow(BigInt::from(2), p.slope_log2 as usize))
    } else {
        BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(2), (-p.slope_log2) as usize))
    };
    Ok(ok && width_y == slope * width_x)
}

fn q(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

impl PiecewiseGraph {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("x0,x1,y0,y1,slope_log2\n");
        for p in &self.pieces {
            let _ = writeln!(s, "{},{},{},{},{}", q(&p.x0), q(&p.x1), q(&p.y0), q(&p.y1), p.slope_log2);
        }
        for (a, b) in &self.singular {
            let _ = writeln!(s, "#singular,{},{}", q(a), q(b));
        }
        s
    }

    pub fn to_svg(&self) -> String {
        let f = |x: &BigRational| x.to_f64().unwrap_or(f64::NAN);
        let mut s = String::from(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\" width=\"512\" height=\"512\">\n",
        );
        s.push_str("<rect x=\"0\" y=\"0\" width=\"1\" height=\"1\" fill=\"white\" stroke=\"#888\" stroke-width=\"0.002\"/>\n");
        for (a, b) in &self.singular {
            let _ = writeln!(
                s,
                "<rect x=\"{}\" y=\"0\" width=\"{}\" height=\"1\" fill=\"#d33\" fill-opacity=\"0.25\"/>",
                f(a),
                f(b) - f(a)
            );
        }
        for p in &self.pieces {
            let _ = writeln!(
                s,
                "<polyline points=\"{},{} {},{}\" fill=\"none\" stroke=\"black\" stroke-width=\"0.003\"/>",
                f(&p.x0),
                1.0 - f(&p.y0),
                f(&p.x1),
                1.0 - f(&p.y1)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}
