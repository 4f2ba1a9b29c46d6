//! Instance and labeling files.
//!
//! Coordinates are exact: decimal strings (`"1.25"`), integers, or rationals
//! (`"5/4"`). JSON floats are refused because their decimal rendering is
//! ambiguous; write the number as a string instead.

use anyhow::{anyhow, bail, Context};
use serde::{Deserialize, Serialize};

use mixlabel::geometry::direction_from_theta;
use mixlabel::preprocess::Obstacle;
use mixlabel::routing::{MapPolygon, RoutedExternal};
use mixlabel::validity::Labeling;
use mixlabel::{Direction, Instance, Point, Rect, Scalar};

/// A number that must be exact: an integer or a decimal/rational string.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExactNum {
    Int(i64),
    Str(String),
    Float(f64),
}

impl ExactNum {
    pub fn to_scalar(&self) -> anyhow::Result<Scalar> {
        match self {
            ExactNum::Int(v) => Ok(Scalar::from_int(*v)),
            ExactNum::Str(s) => Scalar::parse(s).map_err(|e| anyhow!("{e}")),
            ExactNum::Float(v) => bail!(
                "coordinate {v} is a binary float; write it as a decimal string (e.g. \"{v}\") \
                 so the value is exact"
            ),
        }
    }

    pub fn from_scalar(s: &Scalar) -> ExactNum {
        ExactNum::Str(s.to_exact_string())
    }
}

fn point_from(v: &[ExactNum; 2]) -> anyhow::Result<Point> {
    Ok(Point::new(v[0].to_scalar()?, v[1].to_scalar()?))
}

fn point_to(p: &Point) -> [ExactNum; 2] {
    [ExactNum::from_scalar(&p.x), ExactNum::from_scalar(&p.y)]
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabelSize {
    pub w: ExactNum,
    pub h: ExactNum,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    pub points: Vec<[ExactNum; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<LabelSize>,
    /// Leader slope in radians, clockwise from the negative x-axis. Lossy
    /// convenience; `direction` wins when both are present.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direction: Option<[ExactNum; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map: Option<Vec<[ExactNum; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstacles: Option<Vec<Vec<[ExactNum; 2]>>>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> anyhow::Result<InstanceFile> {
        serde_json::from_str(text).context("malformed instance file")
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    /// Builds the instance; `theta`/`direction` arguments override the file.
    pub fn to_instance(
        &self,
        theta_flag: Option<f64>,
        dir_flag: Option<&Direction>,
    ) -> anyhow::Result<Instance> {
        let dir = if let Some(d) = dir_flag {
            d.clone()
        } else if let Some(t) = theta_flag {
            direction_from_theta(t)?
        } else if let Some(d) = &self.direction {
            Direction::new(d[0].to_scalar()?, d[1].to_scalar()?)?
        } else if let Some(t) = self.theta {
            direction_from_theta(t)?
        } else {
            bail!("no leader slope: give --theta/--direction or put one in the file");
        };
        let points = self
            .points
            .iter()
            .map(point_from)
            .collect::<anyhow::Result<Vec<_>>>()?;
        let (w, h) = match &self.label {
            None => (Scalar::one(), Scalar::one()),
            Some(l) => (l.w.to_scalar()?, l.h.to_scalar()?),
        };
        let map = match &self.map {
            None => None,
            Some(verts) => Some(MapPolygon::new(
                verts.iter().map(point_from).collect::<anyhow::Result<Vec<_>>>()?,
            )?),
        };
        let obstacles = match &self.obstacles {
            None => Vec::new(),
            Some(obs) => obs
                .iter()
                .map(|verts| {
                    Ok(Obstacle::new(
                        verts
                            .iter()
                            .map(point_from)
                            .collect::<anyhow::Result<Vec<_>>>()?,
                    )?)
                })
                .collect::<anyhow::Result<Vec<_>>>()?,
        };
        Ok(Instance::new(points, w, h, dir, map, obstacles)?)
    }

    pub fn from_instance(instance: &Instance) -> InstanceFile {
        InstanceFile {
            points: instance.points.iter().map(point_to).collect(),
            label: Some(LabelSize {
                w: ExactNum::from_scalar(&instance.label_w),
                h: ExactNum::from_scalar(&instance.label_h),
            }),
            theta: Some(instance.dir.theta()),
            direction: Some([
                ExactNum::from_scalar(instance.dir.dx()),
                ExactNum::from_scalar(instance.dir.dy()),
            ]),
            map: Some(instance.map.verts().iter().map(point_to).collect()),
            obstacles: if instance.obstacles.is_empty() {
                None
            } else {
                Some(
                    instance
                        .obstacles
                        .iter()
                        .map(|o| o.polygon.verts.iter().map(point_to).collect())
                        .collect(),
                )
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExternalRecord {
    pub index: usize,
    pub exit: [ExactNum; 2],
    /// Horizontal outer segment: exit and anchored label corner.
    pub outer: [[ExactNum; 2]; 2],
    /// Label rectangle: anchor x, anchor y, width, height.
    pub label: [ExactNum; 4],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabelingFile {
    pub direction: [ExactNum; 2],
    pub theta: f64,
    pub mode: String,
    pub optimum: usize,
    pub internal: Vec<usize>,
    pub external: Vec<ExternalRecord>,
    /// Attestation written by the solver; recomputed on load by `check`.
    pub valid: bool,
}

impl LabelingFile {
    pub fn parse(text: &str) -> anyhow::Result<LabelingFile> {
        serde_json::from_str(text).context("malformed labeling file")
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn new(
        instance: &Instance,
        labeling: &Labeling,
        routed: &[RoutedExternal],
        mode: &str,
    ) -> LabelingFile {
        LabelingFile {
            direction: [
                ExactNum::from_scalar(instance.dir.dx()),
                ExactNum::from_scalar(instance.dir.dy()),
            ],
            theta: instance.dir.theta(),
            mode: mode.to_string(),
            optimum: labeling.internal.len(),
            internal: labeling.internal.iter().copied().collect(),
            external: routed
                .iter()
                .map(|r| ExternalRecord {
                    index: r.point,
                    exit: point_to(&r.boundary_exit),
                    outer: [point_to(&r.outer_path.0), point_to(&r.outer_path.1)],
                    label: [
                        ExactNum::from_scalar(&r.label_rect.anchor.x),
                        ExactNum::from_scalar(&r.label_rect.anchor.y),
                        ExactNum::from_scalar(&r.label_rect.w),
                        ExactNum::from_scalar(&r.label_rect.h),
                    ],
                })
                .collect(),
            valid: mixlabel::validity::is_valid(instance, labeling),
        }
    }

    pub fn to_labeling(&self, n: usize) -> anyhow::Result<Labeling> {
        for &i in &self.internal {
            if i >= n {
                bail!("internal index {i} out of range for {n} points");
            }
        }
        for r in &self.external {
            if r.index >= n {
                bail!("external index {} out of range for {n} points", r.index);
            }
        }
        let lab = Labeling::from_internal(n, self.internal.iter().copied());
        let mut externals: Vec<usize> = self.external.iter().map(|r| r.index).collect();
        externals.sort_unstable();
        let expect: Vec<usize> = lab.external.iter().copied().collect();
        if externals != expect {
            bail!("external records do not match the complement of the internal set");
        }
        Ok(lab)
    }

    pub fn external_rects(&self) -> anyhow::Result<Vec<Rect>> {
        self.external
            .iter()
            .map(|r| {
                Ok(Rect::new(
                    Point::new(r.label[0].to_scalar()?, r.label[1].to_scalar()?),
                    r.label[2].to_scalar()?,
                    r.label[3].to_scalar()?,
                ))
            })
            .collect()
    }
}
