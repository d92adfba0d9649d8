use serde::Serialize;
use serde_json::Value;

/// One computed quantity with the parameters that produced it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub quantity: String,
    pub value: Value,
    pub params: Value,
}

impl Record {
    pub fn new(quantity: impl Into<String>, value: impl Serialize, params: Value) -> Self {
        Record {
            quantity: quantity.into(),
            value: serde_json::to_value(value).unwrap_or(Value::Null),
            params,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialise")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_json() {
        let r = Record::new("spectral_gap", 0.5, serde_json::json!({"lazy": true}));
        assert_eq!(
            r.to_json(),
            r#"{"quantity":"spectral_gap","value":0.5,"params":{"lazy":true}}"#
        );
    }
}
