//! Bundled word lists: seeds, attribute lists, expanded lexica, gendered
//! terms, judge given names, and census surname samples.
//!
//! Lists are stored as comma-separated constants and exposed as named
//! [`WordList`] values. Construction dedups repeated terms, so a list
//! printed with an accidental duplication still loads cleanly.

use crate::weat::WordList;

const POSITIVE_SEEDS: &str = "agree, correct, favorable, perfect, intelligent, agreement, faithful, wise, consistent, convinced";

const NEGATIVE_SEEDS: &str = "bad, wrong, mistaken, fail, mistake, unnecessary, unsupported, untenable, reject, erroneous";

const POSITIVE_LEGAL: &str = "faithful, guaranteeing, amiable, pleasant, cheerful, appreciative, personable, businesslike, courteous, healthful, congenial, strived, undertakings, dependable, loving, faithfully, agreeable, thanks, cordial, honorable, splendid, grateful, energetic, harmonious, respectful, loyal, rapport, assuring, bodied, vibrant, wonderful, fullest, desirous, striven, obedient, admired, nurturing, cheerfully, enthusiastically, decorous, compliment, affable, guarantying, generations, commodious, fulfillment, sociable, guarantied, intelligent, punctual, finest, wholesome, amplest, unhindered, decent, contemporaries, considerate, hearty, likeable, punctually, dignified, proud, easygoing, industrious, charming, cordially, prosperous, affectionate, friendly, polite, thrifty, pleasantly, fairest, sacredly, keen, fulfilment, prided, economical, wonderfully, delighted, engagements, aspire, decently, talented, minutest, praised, pluralistic, superintend, excellency, dutiful, insightful, proudly, lively, beautifully, hopeful, excelled";

const POSITIVE_LEGAL_EXCLUDED: &str = "manly, gentlemanly, Bachelor";

const NEGATIVE_LEGAL: &str = "unsupported, incorrect, erroneous, wrong, irrelevant, unfounded, untenable, baseless, improper, erroneously, mistaken, mistake, meritless, inadequate, arbitrary, bad, immaterial, premised, faulty, insufficient, improperly, ignored, disregarded, inadmissible, patently, groundless, unavailing, impermissible, inaccurate, fail, reject, misplaced, excessive, unnecessary, flawed, unjustified, inappropriate, capricious, incorrectly, unsubstantiated, vague, manifestly, predicated, inapplicable, unwarranted, unsupportable, unfair, unmeritorious, invalid, misdirected, unreasonable, lacking, untimely, unreliable, unconstitutional, impermissibly, rejecting, unrelated, speculation, rejection, misleading, specious, justification, confusing, unauthorized, incomplete, misapplied, unjust, misstates, manifest, frivolous, unpersuasive, reversible, merit, fallacious, abandoned, justified, justify, duplicative, undue, irrational, mischaracterization, illegal, grossly, misreading, arbitrarily, mistakenly, recklessly, rejects, disregard, premature, insufficiency, incredible, futile, subjective, wrongdoing, plainly, ignoring, motive, irrelevancy";

const GRANT: &str = "grant, grants, granting, granted, accept, accepts, accepted, accepting, affirm, affirms, affirmed, affirming, approve, approves, approved, approving, sustain, sustains, sustained, sustaining";

const DENY: &str = "deny, denies, denying, denied, decline, declines, declined, declining, vacate, vacates, vacated, vacating, decline, declines, declined, declining, overrule, overrules, overruled, overruling";

const CAREER_SEEDS: &str = "executive, management, professional, corporation, salary, office, business, career";

const FAMILY_SEEDS: &str = "home, parents, children, family, cousins, marriage, wedding, relatives";

const EXPANDED_CAREER: &str = "executive, chief-executive, managerial, salaried, vice-president, salary, operations, operational, Chief-Executive, corporate, CEO, director, COO, president, CFO, management, revenue, board-of-directors, Corporate, chairman, Chief-Financial, hiring-and-firing, organizational-structure, Vice-President, salaries, senior-vice, managing, President, Executive-Vice, corporation, Executive, Chief-Operating, personnel, payroll, Marketing, executives, fiscal, Board-of-Directors, subsidiary, functions, regulatory, automation, duties, managers, commissions, delegated, clerical, assistant, marketing, employing, comptroller, Senior-Vice, vice-presidents, Managing-Director, entity, oversight, audit, Delaware-corporation, departments, usurping, supervisory, President-and-CEO, executive-branch, wholly-owned-subsidiary, offices, Operations, engineering, affiliate, private-sector, performs, demoting, directors, professional, shareholder, competitive, company, reorganizing, Professional, usurpation, secretary-treasurer, revenues, annual-salary, engineer, manager, human-resource, directorship, foreign-corporation, internal, profitability, Comptroller, operating, engineers, Management, promotion, forecasting, restructuring, auditors, competitor, branch, policymaking";

const EXPANDED_FAMILY: &str = "cousins, grandparents, aunts, grandmother, stepmother, aunt, aunt-and-uncle, paternal-grandparents, siblings, mother, maternal-grandfather, maternal-grandparents, sisters, maternal-grandmother, stepfather, children, paternal-grandmother, paternal-grandfather, stepchildren, uncles, daughters, maternal-relatives, godmother, maternal-uncle, relatives, daughter, granddaughters, maternal-aunt, paternal-aunt, paternal, parents, grandchildren, youngest, eldest, uncle, cousin, grandchild, granddaughter, niece, twins, nieces, younger-brother, father, youngest-child, younger-siblings, fiance, Aunt, grandson, brothers-and-sisters, stepbrother, boyfriend, childrens, estranged, sister, fiancee, Grandmother, grandsons, older-siblings, nephews, mothers, stepsister, minor-children, nieces-and-nephews, grandfather, biological-parents, boyfriends, reunited, stepson, maternal, paramour, foster-parents, son, Grandparents, adoptive, teenage, sons, Daughter, stepdaughters, minor-child, girlfriend, biological-father, married, stepdaughter, loved, nephew, adoptive-parents, friends, out-of-wedlock, childless, girls, wedding, kin, girlfriends, loving, teenagers, teenaged, roommates, mom-and-dad";

const EXPANDED_FAMILY_EXCLUDED: &str = "Brianna, Tabitha";

const MALE_TERMS: &str = "male, males, man, men, boy, boys, he, him, his, himself";

const FEMALE_TERMS: &str = "female, females, woman, women, girl, girls, she, her, hers, herself";

const JUDGE_MALE_GIVEN_NAMES: &str = "Dennis, Joe, Howard, Stanley, Daniel, Anthony, Bernard, William, Harold, Raymond, Kenneth, Samuel, Carl, Brian, Sidney, Roger, Alfred, Horace, Vincent, Eric, Douglas, David, Richard, Larry, Andrew, Herbert, Benjamin, Steven, Walter, Warren, Timothy, Charles, Tom, Jon, Kevin, Maurice, Allen, Earl, Henry, Terry, Matthew, Jerry, Gregory, Leonard, Arthur, Frank, Fred, Ralph, Edwin, James, Sam, Jeffrey, Scott, Robert, George, Harry, Alexander, Albert, Gary, John, Ernest, Mark, Jesse, Peter, Clarence, Eugene, Joseph, Marvin, Hugh, Michael, Francis, Donald, Nicholas, Stephen, Paul, Christopher";

const JUDGE_FEMALE_GIVEN_NAMES: &str = "Alice, Amy, Ann, Anna, Anne, Barbara, Beth, Brenda, Carmen, Carol, Carolyn, Catherine, Cathy, Cheryl, Christine, Cynthia, Deborah, Debra, Denise, Diana, Diane, Donna, Elizabeth, Ellen, Helen, Holly, Jacqueline, Jane, Janet, Janice, Jennifer, Jill, Joan, Judith, Julie, Karen, Katherine, Kathleen, Kimberly, Laura, Laurie, Linda, Lisa, Lori, Louise, Marcia, Margaret, Maria, Marilyn, Marsha, Martha, Mary, Maureen, Michelle, Nancy, Pamela, Patricia, Paula, Phyllis, Rebecca, Robin, Rosemary, Ruth, Sandra, Sara, Sarah, Sharon, Shirley, Stephanie, Sue, Susan, Suzanne, Teresa, Vanessa, Victoria, Wendy";

const SURNAMES_EUROPEAN: &str = "Rae, Crisco, Deeley, Bjorklund, Mardian, Aloi, Loewen, Schuster, Engelmann, Ulery, Fiorenzo, Buis, Haycock, Hickory, Hudelson, Lembke, Milbauer, Heffelfinger, Gribble, Mahler, Balestra, Lutz, Brincat, Kandel, Dileo, Marter, Frymire, Nielson, Sirota, Callison, Boydston, Yeager, Dressler, Sachs, Guhl, Hufnagle, Warshaw, Spodek, Saporito, Hegel, Borgeson, Hogland, Balick, Rinke, Stunkard, Hegstrom, Donahey, Mastronardi, Zweig, Kleban, Ineichen, Tunheim, Gudgel, Rhomberg, Rohrs, Henslee, Lobdell, Prins, Mohr, Gillson, Simoneaux, Wetherington, Avers, Paine, Piesco, Serota, Hottenstein, Moskowitz, Torkelson, Solly, Scovel, Goerke, Nemecek, Scruton, Montesano, Dekker, Dray, Toomey, Lamson, Caffrey, Pingree, Milos, Offill, Kralik, Roley, Grabowski, Inglese, Barstad, Sestito, Estey, Englander, Hirshfield, Karibian, Secor, Arrowood, Ludtke, Wenner, Silverberg, Klinck, Coxon, Raborn, Kraushaar, Creely, Pellerito, Kiker, Tallman, Spath, Slee, Riedlinger, Lisle, Kleinschmidt, Abbatiello, Zagar, Farquhar, Hudlow, Aulicino, Verni, Caney, Latona, Leif, Sommers, Melear, Hardt, Filippo, Ollis, Cassano, Giaccio, Rosenman, Longval, Moeser, Agosti, Malony, Sayer, Caswell, Borowsky, Steffey, Dreyer, Thorman, Halferty, Fridley, Berwald, Tyndall, Formby, Famolare, Winkle, Devall, Severtson, Cloutier, Brindley, Betz, Leonardi, Goetzman, Kraemer, Fronk, Trafford, Setter, Giuliano, Guilmette, Conkwright, Ramstad, Cathell, Sundheim, Ebert, Vigliotti";

const SURNAMES_AFRICAN_AMERICAN: &str = "Pettaway, Jessamy, Ephriam, Sinkfield, Senegal, Pondexter, Minnifield, Bendolph, Osagie, Okeke, Boateng, Okoro, Mensah, Cephas, Claybrooks, Vaughns, Hardnett, Cephus, Whack, Ndiaye, Kennebrew, Owusu, Madyun, Bangura, Acoff, Hameen, Chukwu, Conteh, Malveaux, Philmore, Dumpson, Marbley, Ojo, Golphin, Mems, Mercadel, Akande, Narcisse, Knowlin, Wigfall, Lavalais, Sinegal, Lucious, Gaitor, Hargro, Idowu, Torain, Tresvant, Adeniji, Eleby, Bluitt, Luvene, Broaden, Opoku, Addo, Lawal, Shabazz, Ajayi, Bloodsaw, Grandberry, Roulhac, Bodison, Asante, Ducksworth, Killings, Honora, Glasper, Twymon, Poullard, Adu, Hypolite, Whitsey, Beyah, Adeleke, Wrice, Madu, Glinsey, Teamer, Earvin, Wrighten, Broadnax, Sails, Nwachukwu, Gadsden, Cudjoe, Jubilee, Osei, Taiwo, Smalls, Wimes, Salaam, Gadsen, Batiste, Prioleau, Chatmon, Anyanwu, Stepney, Woodfolk, Okafor, Blige, Menefield, Tukes, Okoli, Adeyemi, Lately, Tolefree, Geathers, Presha, Arvie, Fluellen, Ofori, Bacote, Seabrooks, Outing, Wysinger, Manigault, Diallo, Expose, Yeboah, Gabbidon, Baymon, Balogun, Haynesworth, Snype, Ancrum, Nutall, Pinkins, Peguese, Okoye, Boykins, Aytch, Ravenell, Hugee, Afriyie, Shelvin, Darensburg, Winbush, Veasley, Macharia, Straughter, Villery, Tasby, Hezekiah, Neverson, Blakes, Petties, Yelder, Contee, Holiness, Goffney, Degrate, Akpan, Junious, Leffall, Stanciel, Jiggetts, Dunkins, Gadson, Summage, Smokes, Cooperwood, Poitier, Eze, Taybron";

const SURNAMES_HISPANIC: &str = "Montes, Ocana, Sanabria, Magallon, Bejarano, Camarillo, Fierros, Oviedo, Guevara, Melendrez, Becerril, Osorio, Reynoso, Villasenor, Zepeda, Gastelo, Zacarias, Pomales, Montelongo, Galeana, Mazariegos, Abrego, Garfias, Palacios, Zorrilla, Oquendo, Recinos, Alderete, Iraheta, Zurita, Delgadillo, Aleman, Saldivar, Mendieta, Miramontes, Tellez, Inzunza, Escobar, Cuadrado, Beltre, Penaloza, Coreas, Cardena, Villalba, Rubalcaba, Rizo, Taveras, Echeverry, Medina, Batres, Vences, Carmona, Matamoros, Lazcano, Bencomo, Lizarraga, Alvarenga, Costilla, Preciado, Segovia, Villeda, Aparicio, Yanez, Callejas, Salinas, Estrada, Pulido, Botello, Magdaleno, Cobian, Govea, Medellin, Escobedo, Nava, Conejo, Reynosa, Ascencio, Guajardo, Cardona, Saenz, Santoyo, Galvan, Baez, Adames, Benitez, Sauceda, Cerda, Loaiza, Veliz, Zamorano, Valadez, Pelayo, Veloz, Navarrete, Manjarrez, Polanco, Basurto, Herrera, Espinoza, Obeso, Arzola, Sarabia, Perdomo, Rubio, Ovalle, Arrellano, Rengifo, Jasso, Lombera, Pantoja, Cobos, Sosa, Sanchez, Berroa, Montalvo, Mejia, Alcala, Huerta, Chavez, Solorzano, Olmedo, Morfin, Bastidas, Terrones, Alverio, Giraldo, Mayorga, Lagunas, Lozoya, Olivas, Aguilar, Placencia, Brizuela, Calvillo, Rosalio, Guebara, Carrasco, Germosen, Urias, Olivarez, Cervantes, Zamudio, Banales, Liranzo, Ibarra, Flores, Alvarez, Gonzalez, Cedillo, Altamirano, Galaviz, Villagra, Barrientos, Campuzano, Zuniga, Robledo, Yepez, Cadena, Vargas, Ovando, Genao, Hermosillo, Alatorre, Morales, Mireles, Lemus, Nogueras, Posada, Tapia, Aldaco, Oropeza, Fragozo, Puerta, Pizano, Beniquez, Astorga, Jerez, Reynaga, Rivas, Ortega, Murillo, Colmenares, Limon, Amezquita, Chairez, Mariscal, Abarca, Nuno, Ortuno, Carranza, Aceves, Rincon, Zamora, Mosqueda, Cornejo, Arciniega, Retana, Camarena, Londono, Tamez";

const SURNAMES_ASIAN_PACIFIC_ISLANDER: &str = "Chung, Saxena, Doshi, Tsui, Vue, Mehta, Ryu, Lu, Luk, Lui, Hyun, Nam, Sung, Wang, Chan, Yi, Chon, Liew, Lieu, Shih, Tan, Tuan, Hsieh, Huang, Panchal, Parekh, Parikh, Ravi, Bhatt, Hoang, Ma, Diep, Nghiem, Shukla, Kwok, Tian, Kao, Jia, Mao, Pathak, Lor, Thi, Bae, Manoharan, Rajesh, Shin, Jeong, Yim, Satish, Huong, Rong, Hou, Qian, Choi, Ou, Cheng, Vitug, Giang, Hu, Moua, Tse, Iyer, Kwon, Garg, Lai, Luong, Saechao, Quach, Kuang, Jie, Thanh, Ip, Suh, Guo, Vuong, Dinh, Li, Tam, Pak, Ng, Le, Truong, Huynh, Bui, Chuang, Duong, Gautam, Thakkar, Cao, Vu, Ho, Vang, Leang, Yuan, Mui, Song, Ye, Eun, Agrawal, Ha, Keung, Desai, Yum, Kang, Chae, Chiang, Bansal, Shen, Teng, Szeto, Dao, Phong, Jin, Cho, Ding, Agarwal, Sundaram, Kwan, Kulkarni, Aggarwal, Shu, Bhatnagar, Thao, Jang, Sanghera, Hwa, Phu, Shetty, Hsu, Srinivasan, Gandhi, Tsai, Wei, Thang, Yue, Leung, Yin, Choe, Kuo, Poon, Gu, Naik, Chui, Tsang, Tang, Deng, Pei, Chen, Wen, Nguyen, Bhakta, Chuan, Chua, Hwang, Saelee, Phan, Zhou, Han, Tsao, Chu, Xu, Tseng, Vo, Chih, Luu, Su, Nanavati, Goyal, Pham, Kyung, Patel, Trinh, Chau, Zhang, Yu, Kyong, Gupta, Fu, Won, Dang, Goswami, Trivedi, Cai, Ly, Kothari, Trung, Yun, Khurana, Zhao, Adusumilli, Liang, Vyas, Seung, Xiong, Seo, Xiao, Zhu, Liao, Yeh, Pandya";

const SURNAMES_NATIVE_AMERICAN: &str = "Whiteface, Madplume, Stillday, Cheromiah, Denetclaw, Blackbear, Yellowhair, Begaye, Tsosie, Etsitty, Yepa, Greyeyes, Youngbird, Cowboy, Manygoats, Neztsosie, Quiver, Yazzie, Halona, Calabaza, Blackhorse, Whiteplume, Youngbear, Manuelito, Peshlakai, Haskie, Atcitty, Becenti, Spoonhunter, Peneaux, Kingbird, Benally, Bluebird, Tsinnijinnie, Wassillie, Nez, Hosteen, Kameroff, Zunie, Ganadonegro, Laughing, Chischilly, Fasthorse, Wauneka, Bedonie, Goldtooth";

/// Every bundled list name with its comma-separated contents.
const CATALOG: &[(&str, &str)] = &[
    ("positive_seeds", POSITIVE_SEEDS),
    ("negative_seeds", NEGATIVE_SEEDS),
    ("positive_legal", POSITIVE_LEGAL),
    ("positive_legal_excluded", POSITIVE_LEGAL_EXCLUDED),
    ("negative_legal", NEGATIVE_LEGAL),
    ("grant", GRANT),
    ("deny", DENY),
    ("career_seeds", CAREER_SEEDS),
    ("family_seeds", FAMILY_SEEDS),
    ("expanded_career", EXPANDED_CAREER),
    ("expanded_family", EXPANDED_FAMILY),
    ("expanded_family_excluded", EXPANDED_FAMILY_EXCLUDED),
    ("male_terms", MALE_TERMS),
    ("female_terms", FEMALE_TERMS),
    ("judge_male_given_names", JUDGE_MALE_GIVEN_NAMES),
    ("judge_female_given_names", JUDGE_FEMALE_GIVEN_NAMES),
    ("surnames_european", SURNAMES_EUROPEAN),
    ("surnames_african_american", SURNAMES_AFRICAN_AMERICAN),
    ("surnames_hispanic", SURNAMES_HISPANIC),
    ("surnames_asian_pacific_islander", SURNAMES_ASIAN_PACIFIC_ISLANDER),
    ("surnames_native_american", SURNAMES_NATIVE_AMERICAN),
];

fn parse(name: &str, csv: &str) -> WordList {
    WordList::new(
        name,
        csv.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::to_string),
    )
}

/// Looks up one bundled list by name.
pub fn bundled(name: &str) -> Option<WordList> {
    CATALOG
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(n, csv)| parse(n, csv))
}

/// All bundled lists, in catalog order.
pub fn bundled_lists() -> Vec<WordList> {
    CATALOG.iter().map(|(n, csv)| parse(n, csv)).collect()
}

/// Names of every bundled list.
pub fn bundled_names() -> Vec<&'static str> {
    CATALOG.iter().map(|(n, _)| *n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_names_are_unique_and_lists_nonempty() {
        let names = bundled_names();
        let mut sorted = names.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
        for list in bundled_lists() {
            assert!(!list.is_empty(), "{} is empty", list.name);
        }
    }

    #[test]
    fn grant_has_twenty_terms() {
        let grant = bundled("grant").unwrap();
        assert_eq!(grant.len(), 20);
        assert!(grant.terms().contains(&"sustaining".to_string()));
    }

    #[test]
    fn deny_contains_overruled_and_dedups() {
        let deny = bundled("deny").unwrap();
        assert!(deny.terms().contains(&"overruled".to_string()));
        // The printed list repeats the decline block; dedup leaves 16.
        assert_eq!(deny.len(), 16);
    }

    #[test]
    fn seed_lists_have_ten_terms_each() {
        let pos = bundled("positive_seeds").unwrap();
        let neg = bundled("negative_seeds").unwrap();
        assert_eq!(pos.len(), 10);
        assert_eq!(neg.len(), 10);
        assert!(pos.terms().contains(&"favorable".to_string()));
        assert!(neg.terms().contains(&"untenable".to_string()));
    }

    #[test]
    fn career_family_seeds_have_eight_terms_each() {
        assert_eq!(bundled("career_seeds").unwrap().len(), 8);
        assert_eq!(bundled("family_seeds").unwrap().len(), 8);
    }

    #[test]
    fn gender_term_lists_are_ten_and_disjoint() {
        let male = bundled("male_terms").unwrap();
        let female = bundled("female_terms").unwrap();
        assert_eq!(male.len(), 10);
        assert_eq!(female.len(), 10);
        assert!(male.terms().iter().all(|t| !female.terms().contains(t)));
    }

    #[test]
    fn judge_given_name_counts() {
        assert_eq!(bundled("judge_male_given_names").unwrap().len(), 76);
        assert_eq!(bundled("judge_female_given_names").unwrap().len(), 76);
    }

    #[test]
    fn native_american_surnames_count_matches_shortfall() {
        assert_eq!(bundled("surnames_native_american").unwrap().len(), 46);
    }

    #[test]
    fn list_sizes_match_published_counts() {
        for (name, len) in [
            ("positive_legal", 96),
            ("negative_legal", 100),
            ("expanded_career", 100),
            ("expanded_family", 98),
            ("surnames_european", 164),
            ("surnames_african_american", 164),
            ("surnames_hispanic", 200),
            ("surnames_asian_pacific_islander", 200),
        ] {
            assert_eq!(bundled(name).unwrap().len(), len, "{name}");
        }
    }

    #[test]
    fn surname_lists_are_title_cased() {
        for name in [
            "surnames_european",
            "surnames_african_american",
            "surnames_hispanic",
            "surnames_asian_pacific_islander",
            "surnames_native_american",
        ] {
            let list = bundled(name).unwrap();
            for term in list.terms() {
                assert!(
                    term.chars().next().unwrap().is_uppercase(),
                    "{term} in {name}"
                );
            }
        }
    }

    #[test]
    fn excluded_lists_match_review_notes() {
        assert_eq!(
            bundled("positive_legal_excluded").unwrap().terms(),
            &["manly", "gentlemanly", "Bachelor"]
        );
        assert_eq!(
            bundled("expanded_family_excluded").unwrap().terms(),
            &["Brianna", "Tabitha"]
        );
    }

    #[test]
    fn expanded_lists_keep_merged_phrase_tokens() {
        let career = bundled("expanded_career").unwrap();
        assert!(career.terms().contains(&"board-of-directors".to_string()));
        let family = bundled("expanded_family").unwrap();
        assert!(family.terms().contains(&"mom-and-dad".to_string()));
    }

    #[test]
    fn unknown_name_is_none() {
        assert!(bundled("no_such_list").is_none());
    }
}
