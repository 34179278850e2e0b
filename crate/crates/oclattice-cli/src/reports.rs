//! Report types shared by the text and JSON output modes.
//!
//! Every report serializes to JSON and parses back to an equal value, so
//! scripts can consume `--json` output without loss.

use serde::{Deserialize, Serialize};

use oclattice::LatticeExport;

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WordsReport {
    pub content: String,
    pub count: usize,
    pub words: Vec<String>,
}

impl WordsReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for w in &self.words {
            out.push_str(w);
            out.push('\n');
        }
        out.push_str(&format!("{} words\n", self.count));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhiReport {
    pub content: String,
    pub class_count: usize,
    /// Classes in order of their least member; members lexicographic.
    pub classes: Vec<Vec<String>>,
}

impl PhiReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for class in &self.classes {
            out.push_str(&class.join(" "));
            out.push('\n');
        }
        out.push_str(&format!("{} classes\n", self.class_count));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConReport {
    pub partition: String,
    pub quotient_size: usize,
    pub group_order: usize,
    pub congruence_count: usize,
    pub distributive: bool,
    pub modular: bool,
    /// Full order table of the congruence lattice; JSON mode only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeExport>,
}

impl ConReport {
    pub fn render_text(&self) -> String {
        format!(
            "partition: {}\nquotient size: {}\ngroup order: {}\ncongruences: {}\ndistributive: {}\nmodular: {}\n",
            self.partition,
            self.quotient_size,
            self.group_order,
            self.congruence_count,
            yes_no(self.distributive),
            yes_no(self.modular),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PermutativityReport {
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// The witnessing permutation in cycle notation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// The witnessed identity, e.g. "abc = acb".
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identity: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub searched_up_to: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub presentation: String,
    pub permutativity: PermutativityReport,
    pub contains_lz: bool,
    pub contains_rz: bool,
    pub contains_x: bool,
    pub contains_xdual: bool,
    /// "true", "false", or "unknown".
    pub verdict: String,
    /// Least level whose prefix/suffix transposition identity is
    /// derivable; reported only on a true verdict.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    /// Least level at which both power-block swap identities are
    /// derivable; reported only on a true verdict.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub big_n: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub card_bound_log2: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub card_bound_bits: Option<String>,
}

impl CheckReport {
    pub fn render_text(&self) -> String {
        let mut out = format!("presentation: {}\n", self.presentation);
        match (&self.permutativity.identity, &self.permutativity.witness) {
            (Some(id), Some(g)) => {
                out.push_str(&format!(
                    "permutation identity: {}  (length {}, permutation {})\n",
                    id,
                    self.permutativity.n.unwrap_or_default(),
                    g
                ));
            }
            _ => {
                out.push_str(&format!(
                    "permutation identity: none found up to length {}\n",
                    self.permutativity.searched_up_to.unwrap_or_default()
                ));
            }
        }
        out.push_str(&format!("contains LZ: {}\n", yes_no(self.contains_lz)));
        out.push_str(&format!("contains RZ: {}\n", yes_no(self.contains_rz)));
        out.push_str(&format!("contains X: {}\n", yes_no(self.contains_x)));
        out.push_str(&format!("contains X-dual: {}\n", yes_no(self.contains_xdual)));
        let explanation = match self.verdict.as_str() {
            "true" => "the congruence lattices of all quotients satisfy a common nontrivial identity",
            "false" => "no nontrivial lattice identity holds across all quotient congruence lattices",
            _ => "permutativity search exhausted without a witness; undecided at this bound",
        };
        out.push_str(&format!("verdict: {} — {}\n", self.verdict, explanation));
        if let (Some(k), Some(n)) = (self.k, self.n) {
            out.push_str(&format!("prefix/suffix level k: {k}\n"));
            out.push_str(&format!("swap level n: {n}\n"));
        }
        if let Some(big_n) = &self.big_n {
            out.push_str(&format!("quotient size bound N: {big_n}\n"));
        }
        if let (Some(log2), Some(bits)) = (&self.card_bound_log2, &self.card_bound_bits) {
            out.push_str(&format!("congruence lattice size bound: 2^{log2} ({bits} bits)\n"));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeriveReport {
    pub identity: String,
    pub derivable: bool,
}

impl DeriveReport {
    pub fn render_text(&self) -> String {
        if self.derivable {
            "derivable\n".to_string()
        } else {
            "not derivable\n".to_string()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round_trip<T>(value: &T)
    where
        T: Serialize + for<'de> Deserialize<'de> + PartialEq + std::fmt::Debug,
    {
        let json = serde_json::to_string_pretty(value).unwrap();
        let back: T = serde_json::from_str(&json).unwrap();
        assert_eq!(&back, value);
    }

    #[test]
    fn reports_round_trip_through_json() {
        round_trip(&WordsReport {
            content: "x:2,y:1".into(),
            count: 3,
            words: vec!["xxy".into(), "xyx".into(), "yxx".into()],
        });
        round_trip(&PhiReport {
            content: "x:1,y:1".into(),
            class_count: 2,
            classes: vec![vec!["xy".into()], vec!["yx".into()]],
        });
        round_trip(&ConReport {
            partition: "1,1,1".into(),
            quotient_size: 6,
            group_order: 6,
            congruence_count: 6,
            distributive: false,
            modular: true,
            lattice: None,
        });
        round_trip(&CheckReport {
            presentation: "{xy = yx}".into(),
            permutativity: PermutativityReport {
                found: true,
                n: Some(2),
                witness: Some("(1 2)".into()),
                identity: Some("ab = ba".into()),
                searched_up_to: None,
            },
            contains_lz: false,
            contains_rz: false,
            contains_x: false,
            contains_xdual: false,
            verdict: "true".into(),
            k: Some(0),
            n: Some(1),
            big_n: Some("1".into()),
            card_bound_log2: Some("1".into()),
            card_bound_bits: Some("2".into()),
        });
        round_trip(&CheckReport {
            presentation: "{}".into(),
            permutativity: PermutativityReport {
                found: false,
                n: None,
                witness: None,
                identity: None,
                searched_up_to: Some(6),
            },
            contains_lz: true,
            contains_rz: true,
            contains_x: true,
            contains_xdual: true,
            verdict: "unknown".into(),
            k: None,
            n: None,
            big_n: None,
            card_bound_log2: None,
            card_bound_bits: None,
        });
        round_trip(&DeriveReport {
            identity: "xxyyzz = yyxxzz".into(),
            derivable: true,
        });
    }

    #[test]
    fn optional_fields_stay_out_of_json() {
        let report = DeriveReport {
            identity: "xy = yx".into(),
            derivable: false,
        };
        assert_eq!(report.render_text(), "not derivable\n");
        let json = serde_json::to_string(&CheckReport {
            presentation: "{}".into(),
            permutativity: PermutativityReport {
                found: false,
                n: None,
                witness: None,
                identity: None,
                searched_up_to: Some(6),
            },
            contains_lz: true,
            contains_rz: true,
            contains_x: true,
            contains_xdual: true,
            verdict: "unknown".into(),
            k: None,
            n: None,
            big_n: None,
            card_bound_log2: None,
            card_bound_bits: None,
        })
        .unwrap();
        assert!(!json.contains("\"N\""));
        assert!(!json.contains("card_bound_log2"));
    }
}
