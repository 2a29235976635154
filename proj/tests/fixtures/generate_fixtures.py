#!/usr/bin/env python3
"""Regenerates the binary test fixtures under tests/fixtures/.

Every fixture is written next to an *.expected.json file derived from the
generator's own input, never from the C++ code under test:

  dex/      dex files assembled here from class descriptor lists
  axml/     binary manifests compiled here from the text XML next to them
  plist/    binary plists converted from hand-written XML with plistlib
  macho/    Objective-C objects built with clang, plus hand-assembled images
  archives/ APK/IPA containers built with zipfile
  corpus/   the 10-app end-to-end corpus (packages, HARs, sidecars)
  match/    the 20+20 cross-platform matching corpus with oracle pairs

Run from anywhere: python3 tests/fixtures/generate_fixtures.py
clang is needed only for the macho/ objects.
"""

import hashlib
import io
import json
import math
import plistlib
import re
import shutil
import struct
import subprocess
import tempfile
import urllib.parse
import xml.etree.ElementTree as ET
import zipfile
import zlib
from datetime import datetime
from pathlib import Path

ROOT = Path(__file__).resolve().parent


def write(path, data):
    path.parent.mkdir(parents=True, exist_ok=True)
    if isinstance(data, str):
        data = data.encode()
    path.write_bytes(data)


def write_json(path, obj):
    write(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# dex


def uleb128(n):
    out = bytearray()
    while True:
        b = n & 0x7F
        n >>= 7
        if n:
            out.append(b | 0x80)
        else:
            out.append(b)
            return bytes(out)


def mutf8(s):
    out = bytearray()
    for ch in s:
        cp = ord(ch)
        if cp == 0:
            out += b"\xc0\x80"
        elif cp < 0x10000:
            out += ch.encode("utf-8")
        else:
            for unit in struct.unpack("<2H", ch.encode("utf-16-le")):
                out += chr(unit).encode("utf-8", "surrogatepass")
    return bytes(out)


def make_dex(class_descriptors, extra_types=(), version=b"035"):
    strings = sorted(set(class_descriptors) | set(extra_types) | {"Ljava/lang/Object;"})
    index = {s: i for i, s in enumerate(strings)}
    n = len(strings)
    m = len(class_descriptors)
    string_ids_off = 0x70
    type_ids_off = string_ids_off + 4 * n
    class_defs_off = type_ids_off + 4 * n
    data_off = class_defs_off + 32 * m

    data = bytearray()
    string_offsets = []
    for s in strings:
        string_offsets.append(data_off + len(data))
        data += uleb128(len(s.encode("utf-16-le")) // 2) + mutf8(s) + b"\0"
    while len(data) % 4:
        data += b"\0"

    body = bytearray()
    body += b"".join(struct.pack("<I", o) for o in string_offsets)
    body += b"".join(struct.pack("<I", index[s]) for s in strings)  # type i -> string i
    obj = index["Ljava/lang/Object;"]
    for d in class_descriptors:
        body += struct.pack("<8I", index[d], 1, obj, 0, 0xFFFFFFFF, 0, 0, 0)
    body += data

    file_size = 0x70 + len(body)
    header = bytearray(0x70)
    header[0:8] = b"dex\n" + version + b"\0"
    struct.pack_into("<I", header, 0x20, file_size)
    struct.pack_into("<I", header, 0x24, 0x70)
    struct.pack_into("<I", header, 0x28, 0x12345678)
    struct.pack_into("<II", header, 0x38, n, string_ids_off)
    struct.pack_into("<II", header, 0x40, n, type_ids_off)
    struct.pack_into("<II", header, 0x60, m, class_defs_off if m else 0)
    struct.pack_into("<II", header, 0x68, len(data), data_off)
    dex = bytearray(header + body)
    dex[12:32] = hashlib.sha1(dex[32:]).digest()
    struct.pack_into("<I", dex, 8, zlib.adler32(bytes(dex[12:])))
    return bytes(dex)


def dotted(descriptor):
    return descriptor[1:-1].replace("/", ".")


def gen_dex():
    out = ROOT / "dex"
    cases = {
        "firebase": ["Lcom/google/firebase/FirebaseApp;", "La/b/C;"],
        "inner_classes": [
            "Lcom/foo/Bar;",
            "Lcom/foo/Bar$1;",
            "Lcom/foo/Bar$Inner;",
            "Lcom/example/Café;",
            "Lcom/google/android/gms/ads/identifier/internal/IAdvertisingIdService;",
            "LTopLevel;",
        ],
        "empty": [],
    }
    for name, classes in cases.items():
        write(out / f"{name}.dex", make_dex(classes, extra_types=["Ljava/lang/String;", "[I"]))
        write_json(out / f"{name}.expected.json", sorted(dotted(c) for c in classes))

    # String table declared past the end of the file.
    bad = bytearray(make_dex(["La/b/C;"]))
    struct.pack_into("<I", bad, 0x3C, len(bad) + 0x100)
    write(out / "bad_string_offset.dex", bytes(bad))


# ---------------------------------------------------------------------------
# Binary XML (AXML)

ANDROID_NS = "http://schemas.android.com/apk/res/android"
ATTR_IDS = {"name": 0x01010003, "value": 0x01010024, "resource": 0x01010025}


def axml_value(text, strings):
    """Returns (raw_index, data_type, data) following aapt's typing rules."""
    if text in ("true", "false"):
        return 0xFFFFFFFF, 0x12, 0xFFFFFFFF if text == "true" else 0
    if re.fullmatch(r"-?\d+", text):
        return 0xFFFFFFFF, 0x10, int(text) & 0xFFFFFFFF
    if text.startswith("@"):
        return 0xFFFFFFFF, 0x01, reference_id(text)
    i = strings.index(text)
    return i, 0x03, i


def reference_id(text):
    return 0x7F000000 | (zlib.crc32(text.encode()) & 0x00FFFFFF)


def string_pool(strings, utf8):
    offsets = []
    data = bytearray()
    for s in strings:
        offsets.append(len(data))
        if utf8:
            enc = s.encode("utf-8")
            units = len(s.encode("utf-16-le")) // 2
            for n in (units, len(enc)):
                data += bytes([n]) if n < 0x80 else bytes([0x80 | (n >> 8), n & 0xFF])
            data += enc + b"\0"
        else:
            enc = s.encode("utf-16-le")
            data += struct.pack("<H", len(enc) // 2) + enc + b"\0\0"
    while len(data) % 4:
        data += b"\0"
    header_size = 28
    strings_start = header_size + 4 * len(strings)
    size = strings_start + len(data)
    flags = 0x100 if utf8 else 0
    chunk = struct.pack("<HHIIIIII", 0x0001, header_size, size, len(strings), 0, flags, strings_start, 0)
    chunk += b"".join(struct.pack("<I", o) for o in offsets)
    return chunk + data


def compile_axml(xml_text, utf8=False, obfuscate_attr_names=False):
    root = ET.fromstring(xml_text)

    def split(tag):
        if tag.startswith("{"):
            ns, local = tag[1:].split("}")
            return ns, local
        return None, tag

    # aapt layout: attribute names with resource ids first, so the resource
    # map indexes line up with the string pool.
    mapped, others = [], []

    def add(lst, s):
        if s not in mapped and s not in others:
            lst.append(s)

    for el in root.iter():
        for key in el.attrib:
            ns, local = split(key)
            if ns == ANDROID_NS and local in ATTR_IDS:
                add(mapped, local)
    mapped.sort(key=lambda s: ATTR_IDS[s])
    add(others, "android")
    add(others, ANDROID_NS)
    for el in root.iter():
        add(others, split(el.tag)[1])
        for key, value in el.attrib.items():
            ns, local = split(key)
            if not (ns == ANDROID_NS and local in ATTR_IDS):
                add(others, local)
            if not (value in ("true", "false") or re.fullmatch(r"-?\d+", value) or value.startswith("@")):
                add(others, value)
    pool_names = [f"x{i}" for i in range(len(mapped))] if obfuscate_attr_names else mapped
    strings = pool_names + others
    idx = {s: i for i, s in enumerate(mapped)}
    for i, s in enumerate(others):
        idx.setdefault(s, len(mapped) + i)

    chunks = bytearray()
    chunks += string_pool(strings, utf8)
    res_map = b"".join(struct.pack("<I", ATTR_IDS[s]) for s in mapped)
    chunks += struct.pack("<HHI", 0x0180, 8, 8 + len(res_map)) + res_map
    ns_chunk = struct.pack("<IIII", 1, 0xFFFFFFFF, idx["android"], idx[ANDROID_NS])
    chunks += struct.pack("<HHI", 0x0100, 0x10, 0x18) + ns_chunk

    def emit(el):
        _, tag = split(el.tag)
        attrs = []
        for key, value in el.attrib.items():
            ns, local = split(key)
            raw, typ, data = axml_value(value, strings)
            ns_idx = idx[ANDROID_NS] if ns == ANDROID_NS else 0xFFFFFFFF
            attrs.append((ATTR_IDS.get(local, 0xFFFFFFFF), ns_idx, idx[local], raw, typ, data))
        attrs.sort(key=lambda a: a[0])
        body = struct.pack("<IIHHHHHH", 0xFFFFFFFF, idx[tag], 0x14, 0x14, len(attrs), 0, 0, 0)
        for _, ns_idx, name_idx, raw, typ, data in attrs:
            body += struct.pack("<IIIHBBI", ns_idx, name_idx, raw, 8, 0, typ, data)
        chunks.extend(struct.pack("<HHIII", 0x0102, 0x10, 0x10 + len(body), 1, 0xFFFFFFFF) + body)
        for child in el:
            emit(child)
        end = struct.pack("<II", 0xFFFFFFFF, idx[tag])
        chunks.extend(struct.pack("<HHIII", 0x0103, 0x10, 0x18, 1, 0xFFFFFFFF) + end)

    emit(root)
    chunks += struct.pack("<HHI", 0x0101, 0x10, 0x18) + ns_chunk
    return struct.pack("<HHI", 0x0003, 8, 8 + len(chunks)) + bytes(chunks)


def manifest_expectation(xml_text, binary):
    """ManifestData as the readers must report it, straight from the XML source."""
    root = ET.fromstring(xml_text)
    a = lambda local: "{%s}%s" % (ANDROID_NS, local)
    perms, meta, unresolved = set(), {}, set()
    for el in root.iter():
        tag = el.tag
        if tag in ("uses-permission", "uses-permission-sdk-23", "uses-permission-sdk-m"):
            name = el.attrib.get(a("name"), "").strip()
            if name:
                perms.add(name)
        elif tag == "meta-data":
            key = el.attrib.get(a("name"), "").strip()
            value = el.attrib.get(a("value"), el.attrib.get(a("resource")))
            if not key or value is None:
                continue
            if value.startswith("@"):
                unresolved.add(key)
                if binary:
                    value = "@0x%08x" % reference_id(value)
            elif binary and re.fullmatch(r"-?\d+", value):
                value = str(int(value))
            meta[key] = value
    return {
        "package_name": root.attrib.get("package", ""),
        "permissions": sorted(perms),
        "metadata": meta,
        "unresolved": sorted(unresolved),
    }


MANIFEST_BASIC = """<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android" package="com.example.fixture">
  <uses-permission android:name="android.permission.INTERNET" />
  <uses-permission android:name="android.permission.CAMERA" />
  <application android:label="Fixture">
    <meta-data android:name="com.facebook.sdk.AutoInitEnabled" android:value="false" />
  </application>
</manifest>
"""

MANIFEST_RICH = """<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android" package="org.example.rich">
  <uses-permission android:name="android.permission.ACCESS_FINE_LOCATION" />
  <uses-permission android:name="  android.permission.RECORD_AUDIO  " />
  <uses-permission-sdk-23 android:name="android.permission.READ_CONTACTS" />
  <uses-permission android:name="com.example.permission.C2D_MESSAGE" />
  <application android:label="Rich été">
    <meta-data android:name="com.google.android.gms.ads.APPLICATION_ID" android:value="ca-app-pub-3940256099942544~3347511713" />
    <meta-data android:name="com.google.android.gms.ads.DELAY_APP_MEASUREMENT_INIT" android:value="true" />
    <meta-data android:name="firebase_analytics_collection_enabled" android:value="false" />
    <meta-data android:name="com.google.android.gms.version" android:value="12451000" />
    <meta-data android:name="com.facebook.sdk.ApplicationId" android:value="@string/facebook_app_id" />
    <activity android:name=".MainActivity" />
  </application>
</manifest>
"""

MANIFEST_NO_PERMISSIONS = """<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android" package="com.example.quiet">
  <application android:label="Quiet" />
</manifest>
"""


def gen_axml():
    out = ROOT / "axml"
    cases = {
        "basic": (MANIFEST_BASIC, {}),
        "basic_utf8": (MANIFEST_BASIC, {"utf8": True}),
        "rich": (MANIFEST_RICH, {}),
        "rich_obfuscated": (MANIFEST_RICH, {"utf8": True, "obfuscate_attr_names": True}),
        "no_permissions": (MANIFEST_NO_PERMISSIONS, {}),
    }
    for name, (text, opts) in cases.items():
        write(out / f"{name}.axml", compile_axml(text, **opts))
        write_json(out / f"{name}.axml.expected.json", manifest_expectation(text, binary=True))
    for name, text in (("basic", MANIFEST_BASIC), ("rich", MANIFEST_RICH), ("no_permissions", MANIFEST_NO_PERMISSIONS)):
        write(out / f"{name}.xml", text)
        write_json(out / f"{name}.xml.expected.json", manifest_expectation(text, binary=False))


# ---------------------------------------------------------------------------
# plist

INFO_PLIST_XML = """<?xml version="1.0" encoding="UTF-8"?>
<!DOCTYPE plist PUBLIC "-//Apple//DTD PLIST 1.0//EN" "http://www.apple.com/DTDs/PropertyList-1.0.dtd">
<plist version="1.0">
<dict>
	<key>CFBundleIdentifier</key>
	<string>com.example.fixture</string>
	<key>CFBundleExecutable</key>
	<string>Fixture</string>
	<key>CFBundleDisplayName</key>
	<string>Fixture été ☃</string>
	<key>NSCameraUsageDescription</key>
	<string>Scan documents</string>
	<key>NSLocationWhenInUseUsageDescription</key>
	<string>Find nearby stores</string>
	<key>GADDelayAppMeasurementInit</key>
	<true/>
	<key>FacebookAutoLogAppEventsEnabled</key>
	<false/>
	<key>UIRequiredDeviceCapabilities</key>
	<array>
		<string>armv7</string>
	</array>
	<key>NSAppTransportSecurity</key>
	<dict>
		<key>NSAllowsArbitraryLoads</key>
		<true/>
	</dict>
	<key>FixtureBuildNumber</key>
	<integer>42</integer>
	<key>FixtureNegative</key>
	<integer>-7</integer>
	<key>FixtureLarge</key>
	<integer>5000000000</integer>
	<key>FixtureRatio</key>
	<real>2.5</real>
	<key>FixtureReleased</key>
	<date>2020-06-30T12:34:56Z</date>
	<key>FixtureBlob</key>
	<data>AAEC</data>
</dict>
</plist>
"""


def plist_expectation(d):
    meta = {}
    for k, v in d.items():
        if isinstance(v, bool):
            meta[k] = "true" if v else "false"
        elif isinstance(v, int):
            meta[k] = str(v)
        elif isinstance(v, float):
            meta[k] = repr(v)
        elif isinstance(v, str):
            meta[k] = v
        elif isinstance(v, datetime):
            meta[k] = v.strftime("%Y-%m-%dT%H:%M:%SZ")
    return {
        "package_name": d.get("CFBundleIdentifier", ""),
        "permissions": sorted(k for k in d if k.endswith("UsageDescription")),
        "metadata": meta,
        "unresolved": [],
    }


def gen_plist():
    out = ROOT / "plist"
    write(out / "info.xml", INFO_PLIST_XML)
    d = plistlib.loads(INFO_PLIST_XML.encode())
    write(out / "info.bplist", plistlib.dumps(d, fmt=plistlib.FMT_BINARY))
    write_json(out / "info.expected.json", plist_expectation(d))
    minimal = {
        "CFBundleIdentifier": "com.example.min",
        "NSCameraUsageDescription": "camera",
        "NSLocationWhenInUseUsageDescription": "location",
    }
    write(out / "camera_location.xml", plistlib.dumps(minimal, fmt=plistlib.FMT_XML))
    write(out / "camera_location.bplist", plistlib.dumps(minimal, fmt=plistlib.FMT_BINARY))
    write_json(out / "camera_location.expected.json", plist_expectation(minimal))
    write(out / "bad_version.bplist", b"bplist99" + bytes(40))


# ---------------------------------------------------------------------------
# Mach-O

LC_SEGMENT_64 = 0x19
LC_ENCRYPTION_INFO_64 = 0x2C
CPU_ARM64 = 0x0100000C
CPU_ARMV7 = 12


def macho64(names, cryptid=None, cputype=CPU_ARM64):
    strtab = b"".join(n.encode() + b"\0" for n in names)
    sect = struct.pack("<16s16sQQIIIIIIII", b"__objc_classname", b"__TEXT", 0, len(strtab), 0, 0, 0, 0, 0, 0, 0, 0)
    seg_size = 72 + len(sect)
    cmds_size = seg_size + (24 if cryptid is not None else 0)
    data_off = 32 + cmds_size
    sect = struct.pack("<16s16sQQIIIIIIII", b"__objc_classname", b"__TEXT", 0x1000, len(strtab), data_off, 0, 0, 0, 2, 0, 0, 0)
    seg = struct.pack("<II16sQQQQiiII", LC_SEGMENT_64, seg_size, b"__TEXT", 0x1000, len(strtab), data_off, len(strtab), 5, 5, 1, 0) + sect
    cmds = seg
    ncmds = 1
    if cryptid is not None:
        cmds += struct.pack("<IIIIII", LC_ENCRYPTION_INFO_64, 24, data_off, len(strtab), cryptid, 0)
        ncmds += 1
    header = struct.pack("<IiiIIIII", 0xFEEDFACF, cputype, 0, 2, ncmds, len(cmds), 0, 0)
    return header + cmds + strtab


def fat(slices):
    """slices: list of (cputype, bytes)."""
    align = 1 << 12
    header = struct.pack(">II", 0xCAFEBABE, len(slices))
    offset = align
    table = b""
    body = b""
    for cputype, data in slices:
        table += struct.pack(">iiIII", cputype, 0, offset, len(data), 12)
        padded = data + bytes((-len(data)) % align)
        body += padded
        offset += len(padded)
    head = header + table
    return head + bytes(align - len(head)) + body


OBJC_SOURCE = """
__attribute__((objc_root_class))
@interface %s { id isa; } @end
@implementation %s @end
"""


def clang_object(class_names, target):
    src = "".join(OBJC_SOURCE % (n, n) for n in class_names)
    with tempfile.TemporaryDirectory() as tmp:
        m = Path(tmp) / "classes.m"
        o = Path(tmp) / "classes.o"
        m.write_text(src)
        subprocess.run(["clang", "-target", target, "-c", str(m), "-o", str(o)], check=True)
        return o.read_bytes()


def gen_macho():
    out = ROOT / "macho"
    names = ["AppDelegate", "FIRApp"]
    arm64 = clang_object(names, "arm64-apple-ios14.0")
    write(out / "app_arm64.o", arm64)
    write_json(out / "app_arm64.expected.json", sorted(names))
    x86 = clang_object(["AppDelegate", "GADMobileAds", "FBSDKApplicationDelegate"], "x86_64-apple-macos10.15")
    write(out / "app_x86_64.o", x86)
    write_json(out / "app_x86_64.expected.json", sorted(["AppDelegate", "GADMobileAds", "FBSDKApplicationDelegate"]))
    armv7 = clang_object(["LegacyOnlyClass"], "armv7-apple-ios9.0")
    write(out / "app_armv7.o", armv7)
    write_json(out / "app_armv7.expected.json", ["LegacyOnlyClass"])
    # The 32-bit slice comes first; the reader must pick the arm64 one.
    write(out / "app_fat.bin", fat([(CPU_ARMV7, armv7), (CPU_ARM64, arm64)]))
    write_json(out / "app_fat.expected.json", sorted(names))

    write(out / "encrypted.bin", macho64(["SecretClass"], cryptid=1))
    plain = ["AdSupport", "ASIdentifierManager", "FBSDKCoreKit"]
    write(out / "unencrypted.bin", macho64(plain, cryptid=0))
    write_json(out / "unencrypted.expected.json", sorted(plain))
    write(out / "zero_magic.bin", bytes(64))


# ---------------------------------------------------------------------------
# Archives


def zip_bytes(files, compression=zipfile.ZIP_DEFLATED):
    buf = io.BytesIO()
    with zipfile.ZipFile(buf, "w", compression) as z:
        for name, data in files:
            info = zipfile.ZipInfo(name, date_time=(2020, 6, 1, 0, 0, 0))
            info.compress_type = compression
            z.writestr(info, data)
    return buf.getvalue()


def gen_archives():
    out = ROOT / "archives"
    dex1 = ["Lcom/example/fixture/MainActivity;", "Lcom/google/firebase/FirebaseApp;", "Lcom/facebook/FacebookSdk;"]
    dex2 = ["Lcom/google/android/gms/ads/MobileAds;", "Lcom/example/fixture/MainActivity$1;"]
    apk = zip_bytes([
        ("AndroidManifest.xml", compile_axml(MANIFEST_BASIC)),
        ("classes.dex", make_dex(dex1)),
        ("classes2.dex", make_dex(dex2)),
        ("res/layout/main.xml", b"<LinearLayout/>"),
    ])
    write(out / "sample.apk", apk)
    write_json(out / "sample.apk.expected.json", {
        "platform": "android",
        "app_id": "com.example.fixture",
        "class_names": sorted(dotted(c) for c in dex1 + dex2),
        "manifest": manifest_expectation(MANIFEST_BASIC, binary=True),
    })
    stored = zip_bytes([("classes.dex", make_dex(dex1))], compression=zipfile.ZIP_STORED)
    write(out / "stored_no_manifest.apk", stored)

    info = plistlib.loads(INFO_PLIST_XML.encode())
    binary = macho64(["AppDelegate", "GADMobileAds", "AdSupport"])
    ipa = zip_bytes([
        ("Payload/Fixture.app/Info.plist", plistlib.dumps(info, fmt=plistlib.FMT_BINARY)),
        ("Payload/Fixture.app/Fixture", binary),
        ("Payload/Fixture.app/Assets.car", b"\0" * 64),
        ("iTunesMetadata.plist", plistlib.dumps({"itemName": "Fixture"}, fmt=plistlib.FMT_XML)),
    ])
    write(out / "sample.ipa", ipa)
    write_json(out / "sample.ipa.expected.json", {
        "platform": "ios",
        "app_id": "com.example.fixture",
        "class_names": sorted(["AppDelegate", "GADMobileAds", "AdSupport"]),
        "manifest": plist_expectation(info),
    })
    encrypted_ipa = zip_bytes([
        ("Payload/Fixture.app/Info.plist", plistlib.dumps(info, fmt=plistlib.FMT_XML)),
        ("Payload/Fixture.app/Fixture", macho64(["AppDelegate"], cryptid=1)),
    ])
    write(out / "encrypted.ipa", encrypted_ipa)
    write(out / "empty.zip", zip_bytes([]))


# ---------------------------------------------------------------------------
# End-to-end corpus

PROFILES = {
    "android": {
        "ad_id": "38400000-8cf0-11bd-b23e-10b96e40000d",
        "android_id": "9774d56d682e549c",
        "serial": "04f1b3c7d2a95e10",
        "imei": "356938035643809",
        "wifi_mac": "64:bc:0c:65:1a:2f",
        "phone_model": "Nexus 5",
        "phone_name": "Research Nexus",
    },
    "ios": {
        "ad_id": "6d92078a-8246-4ba4-ae5b-76104861e7dc",
        "phone_model": "iPhone8,4",
        "phone_name": "Research iPhone",
    },
}


def md5(s):
    return hashlib.md5(s.encode()).hexdigest()


def sha1(s):
    return hashlib.sha1(s.encode()).hexdigest()


def sha256(s):
    return hashlib.sha256(s.encode()).hexdigest()


def urlenc(s):
    return urllib.parse.quote(s, safe="-._~")


def request(url, method="GET", headers=(), body=None):
    parsed = urllib.parse.urlsplit(url)
    # HAR exporters store the raw query text; keep it verbatim.
    query = []
    for part in parsed.query.split("&") if parsed.query else []:
        k, _, v = part.partition("=")
        query.append({"name": k, "value": v})
    req = {
        "method": method,
        "url": url,
        "httpVersion": "HTTP/1.1",
        "headers": [{"name": "User-Agent", "value": "okhttp/3.12.1"}] + [{"name": k, "value": v} for k, v in headers],
        "queryString": query,
        "cookies": [],
        "headersSize": -1,
        "bodySize": len(body) if body else 0,
    }
    if body is not None:
        req["postData"] = {"mimeType": "application/json", "text": body}
    return {
        "startedDateTime": "2020-06-01T12:00:00.000Z",
        "time": 42,
        "request": req,
        "response": {"status": 200, "statusText": "OK", "httpVersion": "HTTP/1.1", "headers": [], "cookies": [],
                     "content": {"size": 0, "mimeType": "text/plain", "text": "ok"}, "redirectURL": "",
                     "headersSize": -1, "bodySize": 0},
        "cache": {},
        "timings": {"send": 0, "wait": 0, "receive": 0},
    }


def har(entries):
    return json.dumps({"log": {"version": "1.2", "creator": {"name": "mitmproxy har_dump", "version": "0.1"},
                               "entries": entries}}, indent=2) + "\n"


def android_manifest(package, permissions, metadata=()):
    lines = ['<?xml version="1.0" encoding="utf-8"?>',
             '<manifest xmlns:android="http://schemas.android.com/apk/res/android" package="%s">' % package]
    for p in permissions:
        lines.append('  <uses-permission android:name="android.permission.%s" />' % p)
    lines.append('  <application android:label="app">')
    for k, v in metadata:
        lines.append('    <meta-data android:name="%s" android:value="%s" />' % (k, v))
    lines.append("  </application>")
    lines.append("</manifest>")
    return "\n".join(lines) + "\n"


def gen_corpus():
    out = ROOT / "corpus"
    if out.exists():
        shutil.rmtree(out)
    A = PROFILES["android"]
    I = PROFILES["ios"]
    write_json(out / "device_profile.json", PROFILES)

    def apk(stem, package, title, category, classes, permissions, metadata=(), entries=None):
        descs = ["L%s;" % c.replace(".", "/") for c in classes]
        half = (len(descs) + 1) // 2
        files = [("AndroidManifest.xml", compile_axml(android_manifest(package, permissions, metadata))),
                 ("classes.dex", make_dex(descs[:half]))]
        if descs[half:]:
            files.append(("classes2.dex", make_dex(descs[half:])))
        write(out / f"{stem}.apk", zip_bytes(files))
        write_json(out / f"{stem}.meta.json", {"app_id": package, "platform": "android", "title": title,
                                               "category": category})
        if entries is not None:
            write(out / f"{package}.har", har(entries))

    def ipa(stem, bundle_id, title, category, classes, plist, entries=None, encrypted=False, class_dump=None):
        plist = dict(plist, CFBundleIdentifier=bundle_id, CFBundleExecutable=stem)
        binary = macho64(classes, cryptid=1 if encrypted else 0)
        write(out / f"{stem}.ipa", zip_bytes([
            (f"Payload/{stem}.app/Info.plist", plistlib.dumps(plist, fmt=plistlib.FMT_BINARY)),
            (f"Payload/{stem}.app/{stem}", binary),
        ]))
        write_json(out / f"{stem}.meta.json", {"app_id": bundle_id, "platform": "ios", "title": title,
                                               "category": category})
        if class_dump is not None:
            write(out / f"{stem}.classes.txt", "# class dump\n" + "\n".join(class_dump) + "\n")
        if entries is not None:
            # Bundle ids can equal the Android package; name by stem to keep both captures.
            write(out / f"{stem}.har", har(entries))

    # Android -------------------------------------------------------------
    apk("acme_chess_android", "com.acme.chess", "Acme Chess", "general",
        ["com.acme.chess.MainActivity", "com.acme.chess.Board",
         "com.google.android.gms.ads.MobileAds", "com.google.android.gms.ads.AdView",
         "com.google.android.gms.ads.identifier.internal.IAdvertisingIdService",
         "com.google.firebase.analytics.FirebaseAnalytics",
         "com.facebook.FacebookSdk", "com.facebook.appevents.AppEventsLogger"],
        ["INTERNET", "ACCESS_NETWORK_STATE", "ACCESS_FINE_LOCATION", "CAMERA"],
        [("com.facebook.sdk.AutoLogAppEventsEnabled", "false"),
         ("com.google.android.gms.ads.APPLICATION_ID", "ca-app-pub-0000000000000000~0000000000")],
        [request("https://googleads.g.doubleclick.net/mads/gma?rdid=%s&is_lat=0" % A["ad_id"]),
         request("https://graph.facebook.com/v7.0/123/activities", "POST",
                 body=json.dumps({"advertiser_id_hash": md5(A["ad_id"]).upper(), "event": "MOBILE_APP_INSTALL"})),
         request("https://app-measurement.com/config/app/1:123:android:abc?platform=android", "GET",
                 headers=[("X-Device-Model", A["phone_model"])])])
    apk("abc_kids_android", "com.kidsco.abc", "ABC Kids Learning", "children",
        ["com.kidsco.abc.Game", "com.unity3d.ads.UnityAds", "com.unity3d.services.core.Device",
         "com.google.android.gms.ads.MobileAds",
         "com.google.android.gms.ads.identifier.internal.IAdvertisingIdService"],
        ["INTERNET", "ACCESS_NETWORK_STATE"], (),
        [request("https://unityads.unity3d.com/games/1234/configuration", "GET",
                 headers=[("X-Unity-Device", sha1(A["ad_id"]))]),
         request("https://googleads.g.doubleclick.net/mads/static/sdk/native/sdk-core-v40.html")])
    apk("simple_notes", "org.example.notes", "Simple Notes", "general",
        ["org.example.notes.NoteList", "org.example.notes.Editor", "org.example.notes.Editor$Saver"],
        ["INTERNET", "READ_CONTACTS"], (),
        [request("https://sync.example.org:8443/v1/notes", "POST", body='{"notes": []}')])
    apk("daily_news", "com.news.daily", "Daily News Reader", "general",
        ["com.news.daily.Reader", "com.mopub.mobileads.MoPubView", "com.flurry.android.FlurryAgent",
         "com.crashlytics.android.Crashlytics",
         "com.google.android.gms.ads.identifier.internal.IAdvertisingIdService"],
        ["INTERNET", "ACCESS_COARSE_LOCATION", "READ_CALENDAR", "WRITE_CALENDAR", "RECORD_AUDIO"],
        [("firebase_analytics_collection_deactivated", "true")],
        [request("https://ads.mopub.com/m/open?udid=sha256:%s" % sha256(A["android_id"])),
         request("https://data.flurry.com/aap.do", "POST",
                 body="model=%s&serial=%s" % (urlenc(A["phone_model"]), A["serial"])),
         request("https://settings.crashlytics.com/spi/v2/platforms/android/apps/com.news.daily/settings"),
         request("https://cdn.dailynews.example/articles.json")])
    apk("puzzle_kids", "com.puzzle.kids", "Puzzle Party Kids", "general",
        ["com.puzzle.kids.Level", "com.applovin.sdk.AppLovinSdk", "com.google.android.gms.ads.MobileAds",
         "com.google.android.gms.ads.identifier.internal.IAdvertisingIdService"],
        ["INTERNET", "ACCESS_WIFI_STATE"], (),
        [request("https://a.applovin.com/2.0/device?mac=%s" % urlenc(A["wifi_mac"])),
         request("https://rt.applovin.com/4.0/pix", "POST",
                 headers=[("X-Ad-Token", sha256(A["ad_id"]).upper())], body='{"imei": "%s"}' % md5(A["imei"]))])
    apk("fit_track", "com.fit.tracker", "FitTrack Steps", "general",
        ["com.fit.tracker.App", "a.a", "a.b", "a.c", "b.a", "b.b", "c.a", "c.b", "c.c$a", "d.a", "com.google.android.gms.common.GoogleApiAvailability"],
        ["ACTIVITY_RECOGNITION", "BLUETOOTH", "INTERNET"], ())

    # iOS -----------------------------------------------------------------
    ipa("AcmeChess", "com.acme.chess", "Acme Chess", "general",
        ["AppDelegate", "ChessBoardView", "GADMobileAds", "GADBannerView", "FIRAnalytics", "FBSDKAppEvents",
         "SKAdNetwork", "AdSupport", "ASIdentifierManager"],
        {"NSCameraUsageDescription": "Scan boards", "NSLocationWhenInUseUsageDescription": "Local tournaments",
         "FacebookAutoLogAppEventsEnabled": False, "GADDelayAppMeasurementInit": True},
        [request("https://app-measurement.com/a", "POST", body="idfa=%s" % I["ad_id"].upper()),
         request("https://googleads.g.doubleclick.net/mads/gma?idtype=idfa"),
         request("https://graph.facebook.com/v7.0/123/activities", "POST",
                 body=json.dumps({"device": I["phone_name"]}))])
    ipa("ABCKids", "com.kidsco.abc", "ABC Kids Learning", "children", ["Unused"],
        {"NSMicrophoneUsageDescription": "Sing along"},
        [request("https://unityads.unity3d.com/games/1234/configuration"),
         request("https://itunes.apple.com/lookup?bundleId=com.kidsco.abc")],
        encrypted=True,
        class_dump=["KidsAppDelegate", "UnityAds", "UADSWebViewApp", "SKAdNetwork", "  UnityAds  "])
    ipa("WeatherNow", "com.weather.now", "Weather Now", "general",
        ["WNAppDelegate", "IMSdk", "IMBanner", "FIRAnalytics", "AdSupport"],
        {"NSLocationAlwaysAndWhenInUseUsageDescription": "Alerts",
         "NSLocationWhenInUseUsageDescription": "Forecast", "NSContactsUsageDescription": "Share",
         "NSMotionUsageDescription": "Steps", "google_analytics_adid_collection_enabled": False},
        [request("https://api.w.inmobi.com/showad", "POST",
                 headers=[("X-IDFA-MD5", md5(I["ad_id"]))], body="model=%s" % I["phone_model"]),
         request("https://app-measurement.com/a", "POST", body="app=weather")])
    ipa("PhotoEditor", "com.photo.edit", "Photo Editor Pro", "general",
        ["PEAppDelegate", "PEFilterChain", "SKAdNetwork"],
        {"NSPhotoLibraryUsageDescription": "Edit photos", "NSCameraUsageDescription": "Take photos"},
        [request("https://itunes.apple.com/lookup?id=1"), request("https://cdn.photoedit.example/filters.json")])


# ---------------------------------------------------------------------------
# Cross-platform matching corpus (20 Android + 20 iOS)


def tokenize(title, identifier):
    tokens = re.findall(r"[a-z0-9]+", title.lower())
    tokens += [t for t in re.split(r"[.\-]", identifier.lower()) for t in re.findall(r"[a-z0-9]+", t)]
    return tokens


def tfidf(apps):
    docs = [tokenize(t, i) for _, _, t, i in apps]
    df = {}
    for d in docs:
        for tok in set(d):
            df[tok] = df.get(tok, 0) + 1
    n = len(docs)
    vecs = []
    for d in docs:
        v = {}
        for tok in d:
            v[tok] = v.get(tok, 0) + 1
        vecs.append({k: c * math.log(n / df[k]) for k, c in v.items()})
    return vecs


def cosine(a, b):
    dot = sum(w * b.get(k, 0.0) for k, w in a.items())
    na = math.sqrt(sum(w * w for w in a.values()))
    nb = math.sqrt(sum(w * w for w in b.values()))
    return 0.0 if na == 0 or nb == 0 else dot / (na * nb)


def gen_match():
    out = ROOT / "match"
    android = [
        ("Acme Chess", "com.acme.chess"), ("Zen Sudoku", "com.zenapps.sudoku"),
        ("Pocket Weather", "io.pocket.weather"), ("Fast VPN Shield", "com.fastvpn.shield"),
        ("Bubble Pop Mania", "com.bubblepop.mania"), ("Recipe Box", "com.recipebox.cook"),
        ("Metro Transit Live", "com.metro.transit"), ("Yoga Daily", "com.yogadaily.app"),
        ("Piano Tiles Kids", "com.pianotiles.kids"), ("Budget Planner", "com.budget.planner"),
        ("Star Map Explorer", "com.starmap.explorer"), ("Language Buddy", "com.langbuddy.learn"),
        ("Photo Collage Maker", "com.collage.maker.android"), ("Run Tracker", "com.runtracker.gps"),
        ("Word Search Classic", "com.wordsearch.classic"), ("Flashlight Pro", "com.flashlight.pro"),
        ("Podcast Player", "fm.podplayer.android"), ("Sleep Sounds", "com.sleepsounds.relax"),
        ("Golf Scorecard", "com.golfscore.card"), ("Bird Song Guide", "org.birdsong.guide"),
    ]
    ios = [
        ("Acme Chess", "com.acme.chess"), ("Zen Sudoku", "com.zenapps.sudoku"),
        ("Pocket Weather", "io.pocket.weather"), ("Fast VPN Shield", "com.fastvpn.shield"),
        ("Bubble Pop Mania", "com.bubblepop.mania"), ("Recipe Box", "com.recipebox.cook"),
        ("Metro Transit Live", "com.metro.transit"), ("Yoga Daily", "com.yogadaily.app"),
        ("Piano Tiles Kids", "com.pianotiles.kids"), ("Budget Planner", "com.budget.planner"),
        # Same product, platform-specific identifiers: similar but below 95%.
        ("Star Map Explorer", "com.starmap.ios.explorer"), ("Language Buddy Plus", "com.langbuddy.ios"),
        ("Photo Collage Maker", "com.collage.maker.ios"), ("Run Tracker", "com.runtracker.gps"),
        # Unrelated apps.
        ("Tax Helper", "com.taxhelper.app"), ("Guitar Tuner", "com.tuner.guitar"),
        ("Daily Horoscope", "com.horoscope.daily"), ("Meditation Timer", "com.meditimer.app"),
        ("Car Parking Finder", "com.parkfinder.car"), ("Word Search Classic HD", "com.wordsearch.classic.hd"),
    ]
    apps = [(f"a{i:02d}", "android", t, ident) for i, (t, ident) in enumerate(android)]
    apps += [(f"i{i:02d}", "ios", t, ident) for i, (t, ident) in enumerate(ios)]
    vecs = tfidf(apps)
    a_idx = [k for k, app in enumerate(apps) if app[1] == "android"]
    i_idx = [k for k, app in enumerate(apps) if app[1] == "ios"]
    candidates = []
    for a in a_idx:
        best = None
        for i in i_idx:
            s = cosine(vecs[a], vecs[i])
            if best is None or s > best[0] + 1e-12 or (abs(s - best[0]) <= 1e-12 and apps[i][0] < apps[best[1]][0]):
                best = (s, i)
        if best and best[0] >= 0.95:
            candidates.append((best[0], apps[a][0], apps[best[1]][0]))
    candidates.sort(key=lambda c: (-c[0], c[1], c[2]))
    used_a, used_i, pairs = set(), set(), []
    for s, a, i in candidates:
        if a in used_a or i in used_i:
            continue
        used_a.add(a)
        used_i.add(i)
        pairs.append({"android_id": a, "ios_id": i, "similarity": round(s, 9)})
    write_json(out / "apps.json", [{"app_id": a, "platform": p, "title": t, "identifier": ident}
                                   for a, p, t, ident in apps])
    write_json(out / "expected_pairs.json", sorted(pairs, key=lambda p: p["android_id"]))
    near = {}
    for a in a_idx:
        for i in i_idx:
            s = cosine(vecs[a], vecs[i])
            if 0.5 <= s < 0.95:
                near[f"{apps[a][0]}-{apps[i][0]}"] = round(s, 9)
    write_json(out / "near_misses.json", near)


if __name__ == "__main__":
    gen_dex()
    gen_axml()
    gen_plist()
    gen_macho()
    gen_archives()
    gen_corpus()
    gen_match()
    print("fixtures written to", ROOT)
