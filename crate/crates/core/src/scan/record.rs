//! One row of a scan and its CSV/JSON encodings.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The CSV header, column order fixed.
pub const CSV_HEADER: &str =
    "n,f_n,gpf,rad,val_product,delta_min,conductor,szpiro_ratio,kappa_emp,flags";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    Ok,
    /// `f(n) = 0`: no factorization columns.
    ZeroValue,
    /// `n` is in the bad-fiber set.
    BadFiber,
    /// The factoring effort cap was hit; the row is partial.
    FactorCap,
}

impl Flag {
    pub fn as_str(self) -> &'static str {
        match self {
            Flag::Ok => "ok",
            Flag::ZeroValue => "zero_value",
            Flag::BadFiber => "bad_fiber",
            Flag::FactorCap => "factor_cap",
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Flag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "ok" => Flag::Ok,
            "zero_value" => Flag::ZeroValue,
            "bad_fiber" => Flag::BadFiber,
            "factor_cap" => Flag::FactorCap,
            other => {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("unknown flag {other:?}"),
                })
            }
        })
    }
}

/// Big integers travel as decimal strings in JSON.
pub(crate) mod dec {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        String::deserialize(d)?.parse().map_err(de::Error::custom)
    }

    pub mod opt {
        use super::*;

        pub fn serialize<T: Display, S: Serializer>(
            v: &Option<T>,
            s: S,
        ) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => s.collect_str(v),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, T, D>(d: D) -> Result<Option<T>, D::Error>
        where
            T: FromStr,
            T::Err: Display,
            D: Deserializer<'de>,
        {
            Option::<String>::deserialize(d)?
                .map(|s| s.parse().map_err(de::Error::custom))
                .transpose()
        }
    }
}

/// One scanned value of `n`. Curve columns are present only in family scans.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub n: i64,
    #[serde(with = "dec")]
    pub f_n: BigInt,
    #[serde(with = "dec::opt")]
    pub gpf: Option<BigUint>,
    #[serde(with = "dec::opt")]
    pub rad: Option<BigUint>,
    #[serde(with = "dec::opt")]
    pub val_product: Option<BigUint>,
    #[serde(with = "dec::opt")]
    pub delta_min: Option<BigInt>,
    #[serde(with = "dec::opt")]
    pub conductor: Option<BigUint>,
    pub szpiro_ratio: Option<f64>,
    /// `log(max(log|delta_min|, 1 + 1e-9)) / sqrt(log N log*_2 N)`, for `N >= 3`.
    pub kappa_emp: Option<f64>,
    /// `log(val_product) / log(rad)` for `|f_n| >= 2`.
    pub mu_emp: Option<f64>,
    /// `D(n) / delta_min` as `p/q` (or `p`).
    pub quasi_ratio: Option<String>,
    /// Whether `rad(D(n))` divides `rho N`.
    pub rad_divides: Option<bool>,
    pub bound_columns: BTreeMap<String, f64>,
    pub flags: Flag,
}

impl ScanRecord {
    pub(crate) fn bare(n: i64, f_n: BigInt, flags: Flag) -> Self {
        ScanRecord {
            n,
            f_n,
            gpf: None,
            rad: None,
            val_product: None,
            delta_min: None,
            conductor: None,
            szpiro_ratio: None,
            kappa_emp: None,
            mu_emp: None,
            quasi_ratio: None,
            rad_divides: None,
            bound_columns: BTreeMap::new(),
            flags,
        }
    }

    /// The ten CSV fields, absent values empty.
    pub fn csv_fields(&self) -> [String; 10] {
        fn o<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map(T::to_string).unwrap_or_default()
        }
        [
            self.n.to_string(),
            self.f_n.to_string(),
            o(&self.gpf),
            o(&self.rad),
            o(&self.val_product),
            o(&self.delta_min),
            o(&self.conductor),
            o(&self.szpiro_ratio),
            o(&self.kappa_emp),
            self.flags.to_string(),
        ]
    }

    /// Parses the ten CSV fields back; JSON-only columns come back empty.
    pub fn from_csv_fields(fields: &[&str]) -> Result<Self> {
        if fields.len() != 10 {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("expected 10 CSV fields, got {}", fields.len()),
            });
        }
        fn req<T: FromStr>(s: &str, col: &str) -> Result<T> {
            s.parse().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("bad value {s:?} in column {col}"),
            })
        }
        fn opt<T: FromStr>(s: &str, col: &str) -> Result<Option<T>> {
            if s.is_empty() {
                Ok(None)
            } else {
                req(s, col).map(Some)
            }
        }
        let mut r = ScanRecord::bare(
            req(fields[0], "n")?,
            req(fields[1], "f_n")?,
            fields[9].parse()?,
        );
        r.gpf = opt(fields[2], "gpf")?;
        r.rad = opt(fields[3], "rad")?;
        r.val_product = opt(fields[4], "val_product")?;
        r.delta_min = opt(fields[5], "delta_min")?;
        r.conductor = opt(fields[6], "conductor")?;
        r.szpiro_ratio = opt(fields[7], "szpiro_ratio")?;
        r.kappa_emp = opt(fields[8], "kappa_emp")?;
        Ok(r)
    }
}

/// Output encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Usage(format!(
                "unknown format {other:?}, expected csv or json"
            ))),
        }
    }
}

impl Format {
    /// Bytes written before the first record.
    pub fn preamble(self) -> Vec<u8> {
        match self {
            Format::Csv => format!("{CSV_HEADER}\n").into_bytes(),
            Format::Json => b"[\n".to_vec(),
        }
    }

    /// Bytes closing the stream.
    pub fn trailer(self, rows_written: u64) -> Vec<u8> {
        match self {
            Format::Csv => Vec::new(),
            Format::Json if rows_written == 0 => b"]\n".to_vec(),
            Format::Json => b"\n]\n".to_vec(),
        }
    }

    /// Encodes `records`, `already` rows having been written before them.
    pub fn encode(self, records: &[ScanRecord], already: u64) -> Result<Vec<u8>> {
        match self {
            Format::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .has_headers(false)
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_writer(Vec::new());
                for r in records {
                    w.write_record(r.csv_fields())
                        .map_err(|e| Error::Io(e.to_string()))?;
                }
                w.into_inner().map_err(|e| Error::Io(e.to_string()))
            }
            Format::Json => {
                let mut out = Vec::new();
                for (i, r) in records.iter().enumerate() {
                    if already + i as u64 > 0 {
                        out.extend_from_slice(b",\n");
                    }
                    out.extend_from_slice(b"  ");
                    serde_json::to_writer(&mut out, r)?;
                }
                Ok(out)
            }
        }
    }
}

/// Reads a complete CSV stream back into records.
pub fn read_csv(text: &str) -> Result<Vec<ScanRecord>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == CSV_HEADER => {}
        other => {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("CSV header mismatch: {other:?}"),
            })
        }
    }
    lines
        .map(|l| ScanRecord::from_csv_fields(&l.split(',').collect::<Vec<_>>()))
        .collect()
}

/// Reads a complete JSON stream back into records.
pub fn read_json(text: &str) -> Result<Vec<ScanRecord>> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<ScanRecord> {
        let mut a = ScanRecord::bare(1, BigInt::from(2), Flag::Ok);
        a.gpf = Some(BigUint::from(2u32));
        a.rad = Some(BigUint::from(2u32));
        a.val_product = Some(BigUint::from(1u32));
        a.mu_emp = Some(0.0);
        let mut b = ScanRecord::bare(-4, BigInt::from(-221184), Flag::Ok);
        b.delta_min = Some(BigInt::from(-221184));
        b.conductor = Some(BigUint::from(3456u32));
        b.szpiro_ratio = Some(1.5155);
        b.kappa_emp = Some(0.25);
        b.quasi_ratio = Some("1".into());
        b.rad_divides = Some(true);
        b.bound_columns.insert("log_szpiro_shape".into(), 3.5);
        let c = ScanRecord::bare(5, BigInt::from(0), Flag::ZeroValue);
        vec![a, b, c]
    }

    #[test]
    fn csv_round_trip() {
        let recs = sample();
        let mut bytes = Format::Csv.preamble();
        bytes.extend(Format::Csv.encode(&recs, 0).unwrap());
        let text = String::from_utf8(bytes).unwrap();
        assert!(text.starts_with(
            "n,f_n,gpf,rad,val_product,delta_min,conductor,szpiro_ratio,kappa_emp,flags\n"
        ));
        assert!(text.contains("\n5,0,,,,,,,,zero_value\n"));
        let back = read_csv(&text).unwrap();
        assert_eq!(back.len(), 3);
        for (x, y) in back.iter().zip(&recs) {
            assert_eq!(x.csv_fields(), y.csv_fields());
        }
    }

    #[test]
    fn json_round_trip_in_pieces() {
        let recs = sample();
        let mut bytes = Format::Json.preamble();
        bytes.extend(Format::Json.encode(&recs[..1], 0).unwrap());
        bytes.extend(Format::Json.encode(&recs[1..], 1).unwrap());
        bytes.extend(Format::Json.trailer(3));
        let back = read_json(std::str::from_utf8(&bytes).unwrap()).unwrap();
        assert_eq!(back, recs);

        let mut empty = Format::Json.preamble();
        empty.extend(Format::Json.trailer(0));
        assert!(read_json(std::str::from_utf8(&empty).unwrap())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn flags_parse() {
        for f in [Flag::Ok, Flag::ZeroValue, Flag::BadFiber, Flag::FactorCap] {
            assert_eq!(f.as_str().parse::<Flag>().unwrap(), f);
        }
        assert!("bad".parse::<Flag>().is_err());
        assert!("xml".parse::<Format>().is_err());
    }
}
