"""Named graphs used by the classifier and the census.

``MINIMAL`` lists every connected, co-connected complementary vanishing
graph on at most 8 vertices together with its complement.  ``GROEBNER``
lists the four 8-vertex pairs that survive the combinatorial rules but are
not complementary vanishing; only an algebraic argument rules them out.
"""

MINIMAL: tuple[tuple[str, str], ...] = (
    ('K1', '@'),
    ('co-K1', '@'),
    ('G1', 'FxKGW'),
    ('co-G1', 'FErv_'),
    ('G2', 'FzWWw'),
    ('co-G2', 'FCff?'),
    ('G3', 'FxKWo'),
    ('co-G3', 'FErfG'),
    ('G4', 'FzCWW'),
    ('co-G4', 'FCzf_'),
    ('G5', 'G_Kpe['),
    ('co-G5', 'G^rMX_'),
    ('G6', 'G?\\s^c'),
    ('co-G6', 'G~aJ_W'),
    ('G7', 'G?qipk'),
    ('co-G7', 'G~LTMO'),
    ('G8', 'G?z\\bc'),
    ('co-G8', 'G~Ca[W'),
    ('G9', 'G@PL|w'),
    ('co-G9', 'G}mqAC'),
    ('G10', 'G@ejQk'),
    ('co-G10', 'G}XSlO'),
    ('G11', 'GCdXrK'),
    ('co-G11', 'GzYeKo'),
    ('G12', 'GGE[rK'),
    ('co-G12', 'GvxbKo'),
    ('G13', 'G}KoW['),
    ('co-G13', 'G@rNf_'),
    ('G14', 'GTPAX{'),
    ('co-G14', 'Gim|e?'),
    ('G15', 'G`Xksk'),
    ('co-G15', 'G]eRJO'),
    ('G16', 'G`hkqk'),
    ('co-G16', 'G]URLO'),
    ('G17', 'G?C^NK'),
    ('co-G17', 'G~z_oo'),
    ('G18', 'G?C^^W'),
    ('co-G18', 'G~z__c'),
    ('G19', 'G?C^NG'),
    ('co-G19', 'G~z_os'),
    ('G20', 'G}~@`_'),
    ('co-G20', 'G@?}]['),
    ('G21', 'G?NMPk'),
    ('co-G21', 'G~opmO'),
    ('G22', 'G?Ku]['),
    ('co-G22', 'G~rH`_'),
    ('G23', 'G?eRzw'),
    ('co-G23', 'G~XkCC'),
    ('G24', 'G?Mre['),
    ('co-G24', 'G~pKX_'),
    ('G25', 'G@Ku]['),
    ('co-G25', 'G}rH`_'),
    ('G26', 'G?NMX{'),
    ('co-G26', 'G~ope?'),
    ('G27', 'G`?MX{'),
    ('co-G27', 'G]~pe?'),
    ('G28', 'G_C^@{'),
    ('co-G28', 'G^z_}?'),
    ('G29', 'GGDc{{'),
    ('co-G29', 'GvyZB?'),
    ('G30', 'G`?xu['),
    ('co-G30', 'G]~EH_'),
    ('G31', 'G@Ku]W'),
    ('co-G31', 'G}rH`c'),
    ('G32', 'G`G]vK'),
    ('co-G32', 'G]v`Go'),
    ('G33', 'G@NE?{'),
    ('co-G33', 'G}ox~?'),
    ('G34', 'G@NE@{'),
    ('co-G34', 'G}ox}?'),
    ('G35', 'G@K]MK'),
    ('co-G35', 'G}r`po'),
    ('G36', 'G@NEH{'),
    ('co-G36', 'G}oxu?'),
)

GROEBNER: tuple[tuple[str, str], ...] = (
    ('H1', 'G@BMP{'),
    ('co-H1', 'G}{pm?'),
    ('co-H2', 'G?h]@c'),
    ('H2', 'G~U`}W'),
    ('H3', 'G@hkac'),
    ('co-H3', 'G}UR\\W'),
    ('H4', 'G@h^Ug'),
    ('co-H4', 'G}U_hS'),
)
