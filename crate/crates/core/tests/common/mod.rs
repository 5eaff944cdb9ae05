pub mod lp;
pub mod oracle;
