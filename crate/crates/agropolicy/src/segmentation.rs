//! Farm segmentation by annual revenue and headcount, and conversion of
//! revenue thresholds into physical farm sizes per specialization.

use serde::Serialize;

use crate::error::ModelError;
use crate::money::is_positive;

/// One revenue band: [income_min, income_max) in million EUR, with an
/// optional employee cap.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SegmentBand {
    pub name: String,
    pub income_min_eur_mln: f64,
    /// None = unbounded above.
    pub income_max_eur_mln: Option<f64>,
    /// None = no cap.
    pub employee_cap: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SegmentScheme {
    pub name: String,
    /// Ordered by income_min, contiguous from zero.
    pub bands: Vec<SegmentBand>,
}

impl SegmentScheme {
    pub fn validate(&self) -> Result<(), ModelError> {
        if self.bands.is_empty() {
            return Err(ModelError::invalid("segment scheme", "no bands"));
        }
        let mut expected_min = 0.0;
        for (i, band) in self.bands.iter().enumerate() {
            if (band.income_min_eur_mln - expected_min).abs() > 1e-12 {
                return Err(ModelError::invalid(
                    "segment scheme",
                    format!("band {i} does not start where the previous band ends"),
                ));
            }
            match band.income_max_eur_mln {
                Some(max) => {
                    if max <= band.income_min_eur_mln {
                        return Err(ModelError::invalid(
                            "segment scheme",
                            format!("band {i} has empty income range"),
                        ));
                    }
                    expected_min = max;
                }
                None => {
                    if i + 1 != self.bands.len() {
                        return Err(ModelError::invalid(
                            "segment scheme",
                            "unbounded band must be last",
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// The band containing the income (lower bound inclusive, upper
    /// exclusive); an employee-cap violation promotes to the next band
    /// that admits the headcount.
    pub fn classify(&self, annual_income_eur_mln: f64, employees: u32) -> Result<&str, ModelError> {
        if annual_income_eur_mln < 0.0 {
            return Err(ModelError::invalid("classification", "income must be non-negative"));
        }
        let start = self
            .bands
            .iter()
            .position(|b| {
                annual_income_eur_mln >= b.income_min_eur_mln
                    && b.income_max_eur_mln.is_none_or(|max| annual_income_eur_mln < max)
            })
            .expect("bands cover [0, inf)");
        for band in &self.bands[start..] {
            if band.employee_cap.is_none_or(|cap| employees < cap) {
                return Ok(&band.name);
            }
        }
        // no cap admits the headcount; fall back to the top band
        Ok(&self.bands.last().expect("non-empty").name)
    }

    pub fn band_index(&self, name: &str) -> Option<usize> {
        self.bands.iter().position(|b| b.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Product {
    Grains,
    Oilcrops,
    Vegetables,
    FruitsBerries,
    Milk,
}

impl Product {
    pub const ALL: [Product; 5] = [
        Product::Grains,
        Product::Oilcrops,
        Product::Vegetables,
        Product::FruitsBerries,
        Product::Milk,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Product::Grains => "grains",
            Product::Oilcrops => "oilcrops",
            Product::Vegetables => "vegetables",
            Product::FruitsBerries => "fruits_berries",
            Product::Milk => "milk",
        }
    }

    pub fn parse(s: &str) -> Result<Product, ModelError> {
        Product::ALL
            .iter()
            .copied()
            .find(|p| p.label() == s)
            .ok_or_else(|| ModelError::invalid("product", s.to_string()))
    }
}

/// Output price and yield for one specialization; size is in hectares,
/// or head for milk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProductTech {
    pub product: Product,
    pub price_uah_per_tonne: f64,
    pub yield_per_unit: f64,
}

impl ProductTech {
    pub fn validate(&self) -> Result<(), ModelError> {
        if !is_positive(self.price_uah_per_tonne) || !is_positive(self.yield_per_unit) {
            return Err(ModelError::invalid("product tech", "price and yield must be positive"));
        }
        Ok(())
    }
}

/// Physical farm size producing the given revenue: revenue / (price * yield).
pub fn revenue_to_farm_size(revenue_uah: f64, tech: &ProductTech) -> Result<f64, ModelError> {
    tech.validate()?;
    if revenue_uah < 0.0 {
        return Err(ModelError::invalid("revenue", "must be non-negative"));
    }
    Ok(revenue_uah / (tech.price_uah_per_tonne * tech.yield_per_unit))
}

/// One farm record from the batch CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct FarmRecord {
    pub farm_id: String,
    pub annual_income_eur_mln: f64,
    pub employees: u32,
    pub product: Option<Product>,
}

/// Parse the farm CSV: `farm_id,annual_income_eur,employees[,product]`.
/// Income is in million EUR.
pub fn parse_farm_csv(text: &str) -> Result<Vec<FarmRecord>, ModelError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| ModelError::invalid("farm csv", "empty file"))?;
    let header = header.trim();
    if header != "farm_id,annual_income_eur,employees"
        && header != "farm_id,annual_income_eur,employees,product"
    {
        return Err(ModelError::invalid(
            "farm csv",
            format!("unexpected header `{header}`"),
        ));
    }
    let mut farms = Vec::new();
    for (i, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() < 3 || fields.len() > 4 {
            return Err(ModelError::invalid(
                "farm csv",
                format!("line {}: expected 3 or 4 fields", i + 1),
            ));
        }
        farms.push(FarmRecord {
            farm_id: fields[0].trim().to_string(),
            annual_income_eur_mln: fields[1].trim().parse().map_err(|_| {
                ModelError::invalid("farm csv", format!("line {}: bad income", i + 1))
            })?,
            employees: fields[2].trim().parse().map_err(|_| {
                ModelError::invalid("farm csv", format!("line {}: bad employee count", i + 1))
            })?,
            product: match fields.get(3) {
                Some(s) if !s.trim().is_empty() => Some(Product::parse(s.trim())?),
                _ => None,
            },
        });
    }
    Ok(farms)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SegmentRow {
    pub farm_id: String,
    pub segment: String,
    /// Hectares (head for milk) implied by the revenue, when a product is given.
    pub estimated_size: Option<f64>,
}

/// Classify a batch of farms; sizes use the given tech table and the
/// EUR->UAH rate to convert income.
pub fn segment_batch(
    farms: &[FarmRecord],
    scheme: &SegmentScheme,
    techs: &[ProductTech],
    uah_per_eur: f64,
) -> Result<Vec<SegmentRow>, ModelError> {
    scheme.validate()?;
    farms
        .iter()
        .map(|farm| {
            let segment = scheme
                .classify(farm.annual_income_eur_mln, farm.employees)?
                .to_string();
            let estimated_size = match farm.product {
                Some(product) => {
                    let tech = techs
                        .iter()
                        .find(|t| t.product == product)
                        .ok_or_else(|| ModelError::invalid("product tech", product.label()))?;
                    Some(revenue_to_farm_size(
                        farm.annual_income_eur_mln * 1e6 * uah_per_eur,
                        tech,
                    )?)
                }
                None => None,
            };
            Ok(SegmentRow {
                farm_id: farm.farm_id.clone(),
                segment,
                estimated_size,
            })
        })
        .collect()
}
