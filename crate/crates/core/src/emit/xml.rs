//! Minimal pretty-printing XML writer with a fixed layout: 2-space indent,
//! LF line ends, one element per line, attributes in the order given.

pub(crate) enum AttrValue<'a> {
    Text(&'a str),
    /// Written verbatim; used for values that carry entity references.
    Raw(&'a str),
}

pub(crate) type Attr<'a> = (&'a str, AttrValue<'a>);

pub(crate) fn text<'a>(name: &'a str, value: &'a str) -> Attr<'a> {
    (name, AttrValue::Text(value))
}

pub(crate) fn raw<'a>(name: &'a str, value: &'a str) -> Attr<'a> {
    (name, AttrValue::Raw(value))
}

pub(crate) fn escape_text(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '\r' => out.push_str("&#13;"),
            c => out.push(c),
        }
    }
    out
}

pub(crate) fn escape_attr(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\n' => out.push_str("&#10;"),
            '\r' => out.push_str("&#13;"),
            '\t' => out.push_str("&#9;"),
            c => out.push(c),
        }
    }
    out
}

pub(crate) struct XmlWriter {
    out: String,
    stack: Vec<String>,
}

impl XmlWriter {
    pub fn new() -> Self {
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        XmlWriter {
            out,
            stack: Vec::new(),
        }
    }

    pub fn doctype(&mut self, root: &str, entities: &[(&str, &str)]) {
        self.out.push_str(&format!("<!DOCTYPE {root} [\n"));
        for (name, value) in entities {
            self.out
                .push_str(&format!("  <!ENTITY {name} \"{}\">\n", escape_attr(value)));
        }
        self.out.push_str("]>\n");
    }

    fn indent(&mut self) {
        for _ in 0..self.stack.len() {
            self.out.push_str("  ");
        }
    }

    fn start_tag(&mut self, name: &str, attrs: &[Attr<'_>]) {
        self.indent();
        self.out.push('<');
        self.out.push_str(name);
        for (k, v) in attrs {
            self.out.push(' ');
            self.out.push_str(k);
            self.out.push_str("=\"");
            match v {
                AttrValue::Text(t) => self.out.push_str(&escape_attr(t)),
                AttrValue::Raw(t) => self.out.push_str(t),
            }
            self.out.push('"');
        }
    }

    pub fn open(&mut self, name: &str, attrs: &[Attr<'_>]) {
        self.start_tag(name, attrs);
        self.out.push_str(">\n");
        self.stack.push(name.to_string());
    }

    pub fn empty(&mut self, name: &str, attrs: &[Attr<'_>]) {
        self.start_tag(name, attrs);
        self.out.push_str("/>\n");
    }

    pub fn text_element(&mut self, name: &str, attrs: &[Attr<'_>], content: &str) {
        self.start_tag(name, attrs);
        self.out.push('>');
        self.out.push_str(&escape_text(content));
        self.out.push_str("</");
        self.out.push_str(name);
        self.out.push_str(">\n");
    }

    pub fn close(&mut self) {
        let name = self.stack.pop().expect("close without open");
        self.indent();
        self.out.push_str("</");
        self.out.push_str(&name);
        self.out.push_str(">\n");
    }

    pub fn finish(self) -> String {
        assert!(self.stack.is_empty(), "unclosed elements: {:?}", self.stack);
        self.out
    }
}
