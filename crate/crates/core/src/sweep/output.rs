use std::io::Write;

use serde_json::{Map, Value};

use super::{Cell, KlyshkoBar, SweepError, SweepTable, SINGULAR_SENTINEL};

/// 17 significant digits, enough to round-trip any f64.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn cell_text(c: &Cell) -> String {
    match *c {
        Cell::Value(v) => num(v),
        Cell::Singular => SINGULAR_SENTINEL.to_string(),
    }
}

fn json_number(x: f64) -> Value {
    // non-finite values never reach the writers
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn write_sweep_csv<W: Write>(table: &SweepTable, out: W) -> Result<(), SweepError> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["kind".to_string(), "d".to_string(), "amplitude".to_string()];
    header.extend(table.quantities.iter().map(|q| q.to_string()));
    w.write_record(&header)?;
    for row in &table.rows {
        let mut record = vec![row.kind.to_string(), row.d.to_string(), num(row.amplitude)];
        record.extend(row.values.iter().map(cell_text));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// Array of flat objects keyed like the CSV header.
pub fn write_sweep_json<W: Write>(table: &SweepTable, mut out: W) -> Result<(), SweepError> {
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            let mut obj = Map::new();
            obj.insert("kind".into(), Value::String(row.kind.to_string()));
            obj.insert("d".into(), Value::from(row.d));
            obj.insert("amplitude".into(), json_number(row.amplitude));
            for (q, c) in table.quantities.iter().zip(&row.values) {
                let v = match *c {
                    Cell::Value(x) => json_number(x),
                    Cell::Singular => Value::String(SINGULAR_SENTINEL.into()),
                };
                obj.insert(q.to_string(), v);
            }
            Value::Object(obj)
        })
        .collect();
    serde_json::to_writer_pretty(&mut out, &rows)?;
    writeln!(out)?;
    Ok(())
}

pub fn write_klyshko_csv<W: Write>(bars: &[KlyshkoBar], out: W) -> Result<(), SweepError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["kind", "d", "label", "amplitude", "n", "b"])?;
    for b in bars {
        w.write_record([
            b.kind.to_string(),
            b.d.to_string(),
            b.label.clone(),
            num(b.amplitude),
            b.n.to_string(),
            num(b.value),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_klyshko_json<W: Write>(bars: &[KlyshkoBar], mut out: W) -> Result<(), SweepError> {
    serde_json::to_writer_pretty(&mut out, bars)?;
    writeln!(out)?;
    Ok(())
}
