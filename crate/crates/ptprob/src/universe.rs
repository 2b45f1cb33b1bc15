//! Finite universes of discourse.
//!
//! A [`Universe`] is an ordered, finite set of named points. Points may carry
//! a numeric coordinate (scalar or fixed-length vector) so that parametric
//! truth functions and distortion measures can be evaluated on them, but
//! purely symbolic universes (e.g. label alphabets) are equally valid.

use std::fmt;
use std::sync::Arc;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One point of a universe: a unique id plus an optional numeric coordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub id: String,
    /// Numeric coordinate. Scalars are stored as one-element vectors;
    /// JSON accepts either `3.5` or `[3.5, 1.0]` and scalars serialize
    /// back to a bare number.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "coord_serde")]
    pub coord: Option<Vec<f64>>,
}

impl Point {
    pub fn symbolic(id: impl Into<String>) -> Self {
        Point { id: id.into(), coord: None }
    }

    pub fn scalar(id: impl Into<String>, x: f64) -> Self {
        Point { id: id.into(), coord: Some(vec![x]) }
    }

    pub fn vector(id: impl Into<String>, coord: Vec<f64>) -> Self {
        Point { id: id.into(), coord: Some(coord) }
    }
}

/// Serialize `Some(vec![x])` as `x` and longer vectors as arrays; accept both.
mod coord_serde {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Vec<f64>>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(c) if c.len() == 1 => s.serialize_f64(c[0]),
            Some(c) => {
                let mut seq = s.serialize_seq(Some(c.len()))?;
                for x in c {
                    seq.serialize_element(x)?;
                }
                seq.end()
            }
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Vec<f64>>, D::Error> {
        struct CoordVisitor;

        impl<'de> Visitor<'de> for CoordVisitor {
            type Value = Option<Vec<f64>>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number, an array of numbers, or null")
            }

            fn visit_f64<E: de::Error>(self, x: f64) -> std::result::Result<Self::Value, E> {
                Ok(Some(vec![x]))
            }

            fn visit_i64<E: de::Error>(self, x: i64) -> std::result::Result<Self::Value, E> {
                Ok(Some(vec![x as f64]))
            }

            fn visit_u64<E: de::Error>(self, x: u64) -> std::result::Result<Self::Value, E> {
                Ok(Some(vec![x as f64]))
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Self::Value, A::Error> {
                let mut v = Vec::new();
                while let Some(x) = seq.next_element::<f64>()? {
                    v.push(x);
                }
                Ok(Some(v))
            }

            fn visit_none<E: de::Error>(self) -> std::result::Result<Self::Value, E> {
                Ok(None)
            }

            fn visit_unit<E: de::Error>(self) -> std::result::Result<Self::Value, E> {
                Ok(None)
            }

            fn visit_some<D2: Deserializer<'de>>(self, d: D2) -> std::result::Result<Self::Value, D2::Error> {
                d.deserialize_any(CoordVisitor)
            }
        }

        d.deserialize_option(CoordVisitor)
    }
}

#[derive(Debug, PartialEq)]
struct Inner {
    points: Vec<Point>,
    /// Common coordinate dimension, if every point carries one.
    coord_dim: Option<usize>,
}

/// An ordered finite set of points. Cheap to clone (shared storage);
/// two universes are equal when their point lists are equal.
#[derive(Debug, Clone)]
pub struct Universe {
    inner: Arc<Inner>,
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}

impl Universe {
    /// Build a universe from points. Ids must be unique and non-empty;
    /// coordinates, where present, must be finite. `coord_dim` is recorded
    /// only when every point has a coordinate of the same length.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidUniverse("no points".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for p in &points {
            if p.id.is_empty() {
                return Err(Error::InvalidUniverse("empty point id".into()));
            }
            if !seen.insert(p.id.as_str()) {
                return Err(Error::InvalidUniverse(format!("duplicate id {:?}", p.id)));
            }
            if let Some(c) = &p.coord {
                if c.is_empty() {
                    return Err(Error::InvalidUniverse(format!("empty coordinate on {:?}", p.id)));
                }
                if c.iter().any(|x| !x.is_finite()) {
                    return Err(Error::InvalidUniverse(format!("non-finite coordinate on {:?}", p.id)));
                }
            }
        }
        let dims: Vec<Option<usize>> = points.iter().map(|p| p.coord.as_ref().map(Vec::len)).collect();
        let coord_dim = match dims[0] {
            Some(d) if dims.iter().all(|x| *x == Some(d)) => Some(d),
            _ => None,
        };
        if coord_dim.is_none() && dims.iter().any(Option::is_some) && dims.iter().any(Option::is_none) {
            return Err(Error::InvalidUniverse(
                "either every point or no point may carry a coordinate".into(),
            ));
        }
        if coord_dim.is_none() && dims.iter().all(Option::is_some) {
            return Err(Error::InvalidUniverse("coordinate dimensions differ".into()));
        }
        Ok(Universe { inner: Arc::new(Inner { points, coord_dim }) })
    }

    /// Symbolic universe from bare ids.
    pub fn labeled<S: AsRef<str>>(ids: &[S]) -> Result<Self> {
        Self::new(ids.iter().map(|s| Point::symbolic(s.as_ref())).collect())
    }

    /// Scalar universe: one point per value, ids derived from the values.
    pub fn from_scalars(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Point::scalar(format!("x{v}"), v)).collect())
    }

    /// Evenly spaced scalar universe with `n` points covering `[lo, hi]`.
    pub fn scalar_grid(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if n == 0 || !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(Error::InvalidUniverse(format!("bad grid [{lo}, {hi}] with {n} points")));
        }
        let step = if n > 1 { (hi - lo) / (n - 1) as f64 } else { 0.0 };
        Self::new(
            (0..n)
                .map(|i| Point::scalar(format!("x{i}"), lo + step * i as f64))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.inner.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.inner.points
    }

    pub fn id(&self, i: usize) -> &str {
        &self.inner.points[i].id
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.inner.points.iter().position(|p| p.id == id)
    }

    /// Dimension of the shared coordinate system, if any.
    pub fn coord_dim(&self) -> Option<usize> {
        self.inner.coord_dim
    }

    /// Coordinate vector of point `i`, if present.
    pub fn coord(&self, i: usize) -> Option<&[f64]> {
        self.inner.points[i].coord.as_deref()
    }

    /// Scalar coordinate of point `i`; errors unless the universe is 1-D.
    pub fn scalar(&self, i: usize) -> Result<f64> {
        match self.coord(i) {
            Some([x]) => Ok(*x),
            _ => Err(Error::MissingCoordinate { id: self.id(i).to_string(), expected: 1 }),
        }
    }

    /// Require a coordinate system of dimension `d` on every point.
    pub fn require_coords(&self, d: usize) -> Result<()> {
        if self.coord_dim() == Some(d) {
            Ok(())
        } else {
            Err(Error::MissingCoordinate { id: self.id(0).to_string(), expected: d })
        }
    }

    /// Keep only the points at the given indices (in the given order).
    pub fn restrict(&self, indices: &[usize]) -> Result<Universe> {
        Universe::new(indices.iter().map(|&i| self.inner.points[i].clone()).collect())
    }
}

/// Check that two objects live on the same universe.
pub fn check_same_universe(a: &Universe, b: &Universe, what: &str) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::UniverseMismatch(what.to_string()))
    }
}

impl Serialize for Universe {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.inner.points.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Universe {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let points = Vec::<Point>::deserialize(d)?;
        Universe::new(points).map_err(de::Error::custom)
    }
}
