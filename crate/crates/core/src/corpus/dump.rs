use std::io::{self, BufRead};

type Decoder = Box<dyn Fn(&[u8]) -> String + Send>;

/// Raw `<doc>` block contents before labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDoc {
    pub url: String,
    pub content: String,
}

/// Streams `<doc>` blocks out of an SGML-like news dump:
///
/// ```text
/// <doc>
/// <url>http://sports.example.com/a.html</url>
/// <docno>...</docno>
/// <content>...</content>
/// </doc>
/// ```
///
/// Blocks lacking `<url>` or `<content>` are skipped and counted. Bytes are
/// decoded line by line, lossy UTF-8 by default; GB-family dumps can supply
/// their own decoder.
pub struct DumpReader<R> {
    input: R,
    decoder: Decoder,
    buf: String,
    line: Vec<u8>,
    skipped: usize,
    done: bool,
}

impl<R: BufRead> DumpReader<R> {
    pub fn new(input: R) -> Self {
        Self::with_decoder(input, |bytes| String::from_utf8_lossy(bytes).into_owned())
    }

    pub fn with_decoder(input: R, decoder: impl Fn(&[u8]) -> String + Send + 'static) -> Self {
        DumpReader {
            input,
            decoder: Box::new(decoder),
            buf: String::new(),
            line: Vec::new(),
            skipped: 0,
            done: false,
        }
    }

    /// Malformed blocks seen so far.
    pub fn skipped(&self) -> usize {
        self.skipped
    }

    fn take_block(&mut self) -> Option<RawDoc> {
        loop {
            let Some(start) = self.buf.find("<doc>") else {
                self.buf.clear();
                return None;
            };
            let Some(rel_end) = self.buf[start..].find("</doc>") else {
                self.buf.drain(..start);
                return None;
            };
            let end = start + rel_end;
            let mut body = &self.buf[start + "<doc>".len()..end];
            // An unterminated earlier <doc> is malformed; keep the last one.
            if let Some(inner) = body.rfind("<doc>") {
                self.skipped += 1;
                body = &body[inner + "<doc>".len()..];
            }
            let doc = match (field(body, "url"), field(body, "content")) {
                (Some(url), Some(content)) => Some(RawDoc {
                    url: url.trim().to_owned(),
                    content: content.trim().to_owned(),
                }),
                _ => None,
            };
            self.buf.drain(..end + "</doc>".len());
            match doc {
                Some(doc) => return Some(doc),
                None => self.skipped += 1,
            }
        }
    }
}

fn field<'a>(block: &'a str, tag: &str) -> Option<&'a str> {
    let open = format!("<{tag}>");
    let close = format!("</{tag}>");
    let start = block.find(&open)? + open.len();
    let len = block[start..].find(&close)?;
    Some(&block[start..start + len])
}

impl<R: BufRead> Iterator for DumpReader<R> {
    type Item = io::Result<RawDoc>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if let Some(doc) = self.take_block() {
                return Some(Ok(doc));
            }
            if self.done {
                return None;
            }
            self.line.clear();
            match self.input.read_until(b'\n', &mut self.line) {
                Ok(0) => {
                    self.done = true;
                    if self.buf.contains("<doc>") {
                        self.skipped += 1;
                    }
                    self.buf.clear();
                }
                Ok(_) => {
                    let text = (self.decoder)(&self.line);
                    self.buf.push_str(&text);
                }
                Err(e) => return Some(Err(e)),
            }
        }
    }
}

/// Reads a whole dump, returning the documents and the skip count.
pub fn parse_dump<R: BufRead>(input: R) -> io::Result<(Vec<RawDoc>, usize)> {
    let mut reader = DumpReader::new(input);
    let docs = reader.by_ref().collect::<io::Result<Vec<_>>>()?;
    Ok((docs, reader.skipped()))
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    #[test]
    fn extracts_fields() {
        let dump = "<doc>\n<url>http://sports.example.com/a</url>\n<docno>1</docno>\n<content>比赛结束</content>\n</doc>\n";
        let (docs, skipped) = parse_dump(dump.as_bytes()).unwrap();
        assert_eq!(skipped, 0);
        assert_eq!(
            docs,
            vec![RawDoc {
                url: "http://sports.example.com/a".into(),
                content: "比赛结束".into()
            }]
        );
    }

    #[test]
    fn missing_content_skipped() {
        let dump = "<doc><url>http://a.b/</url></doc>\n<doc><url>http://c.d/</url><content>x</content></doc>\n";
        let mut reader = DumpReader::new(dump.as_bytes());
        let docs: Vec<_> = reader.by_ref().map(Result::unwrap).collect();
        assert_eq!(docs.len(), 1);
        assert_eq!(docs[0].url, "http://c.d/");
        assert_eq!(reader.skipped(), 1);
    }

    #[test]
    fn empty_stream() {
        let (docs, skipped) = parse_dump("".as_bytes()).unwrap();
        assert!(docs.is_empty());
        assert_eq!(skipped, 0);
    }

    #[test]
    fn unterminated_blocks_counted() {
        let dump = "<doc>\n<url>u1</url>\n<doc>\n<url>u2</url><content>c2</content>\n</doc>\n<doc><url>u3</url>\n";
        let (docs, skipped) = parse_dump(dump.as_bytes()).unwrap();
        assert_eq!(docs.len(), 1);
        assert_eq!(docs[0].url, "u2");
        assert_eq!(skipped, 2);
    }

    #[test]
    fn custom_decoder() {
        let dump = b"<doc><url>U</url><content>abc</content></doc>\n";
        let mut reader = DumpReader::with_decoder(&dump[..], |b| {
            String::from_utf8_lossy(b).replace("abc", "ABC")
        });
        let doc = reader.next().unwrap().unwrap();
        assert_eq!(doc.content, "ABC");
    }

    proptest! {
        #[test]
        fn arbitrary_bytes_never_panic(bytes in prop::collection::vec(any::<u8>(), 0..512)) {
            let _ = parse_dump(&bytes[..]).unwrap();
        }

        #[test]
        fn tag_soup_never_panics(parts in prop::collection::vec(
            prop::sample::select(vec!["<doc>", "</doc>", "<url>", "</url>", "<content>", "</content>", "x", "\n", "中"]),
            0..64,
        )) {
            let text: String = parts.concat();
            let _ = parse_dump(text.as_bytes()).unwrap();
        }
    }
}
